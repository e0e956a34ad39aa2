#pragma once

#include <array>
#include <vector>

#include "smtr/instance.hpp"

namespace smtr {

// 1-in-3 positive 3-SAT: all literals positive, three distinct variables per
// clause, every variable in at most three clauses. Variables are 0-based.
struct SatFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

using Assignment = std::vector<bool>;  // one truth value per variable

// Throws ValidationError on out-of-range variables, repeats within a clause,
// or a variable occurring more than three times.
void validate_formula(const SatFormula& f);

std::vector<int> occurrence_counts(const SatFormula& f);

// True iff every clause has exactly one true variable.
bool satisfies_one_in_three(const SatFormula& f, const Assignment& a);

}  // namespace smtr
