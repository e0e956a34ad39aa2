#pragma once

#include <optional>
#include <set>

#include "smtr/instance.hpp"
#include "smtr/sat.hpp"
#include "smtr/stability.hpp"

namespace smtr {

// Streams every matching of the instance exactly once, in lexicographic
// order of the sorted edge-index sequence, starting with the empty matching.
// Exhaustive by design; intended for desk-scale instances.
class MatchingEnumerator {
 public:
  explicit MatchingEnumerator(const Instance& inst);
  std::optional<Matching> next();

 private:
  const Instance& inst_;
  std::vector<int> chosen_;
  std::vector<bool> man_used_, woman_used_;
  int next_ = 0;
  bool fresh_ = true;
};

std::vector<Matching> all_matchings(const Instance& inst);

// First matching in enumeration order that passes verify_stable, or nullopt.
// Branches that provably cannot contain a verifying matching are skipped; the
// returned witness is identical to what a full scan would select.
std::optional<Matching> oracle_exists(const Instance& inst, const RestrictedEdgeSets& r,
                                      StabilityLevel level);

// First perfect matching with an empty weakly-blocking set, or nullopt.
std::optional<Matching> oracle_perfect_weak(const Instance& inst);

// All cardinalities of stable matchings at the level, no restricted edges.
std::set<int> stable_cardinalities(const Instance& inst, StabilityLevel level);

// First assignment in lexicographic order (x1 flips fastest) with exactly one
// true variable per clause, or nullopt. Exhaustive over all 2^n assignments.
std::optional<Assignment> solve_1in3_bruteforce(const SatFormula& f);

}  // namespace smtr
