#include "smtr/sat.hpp"

#include <string>

namespace smtr {

void validate_formula(const SatFormula& f) {
  if (f.num_vars < 0) throw ValidationError("negative variable count");
  std::vector<int> occurrences(f.num_vars, 0);
  for (size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& clause = f.clauses[c];
    for (int v : clause) {
      if (v < 0 || v >= f.num_vars)
        throw ValidationError("clause " + std::to_string(c + 1) + " mentions out-of-range variable x" +
                              std::to_string(v + 1));
      ++occurrences[v];
    }
    if (clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2])
      throw ValidationError("clause " + std::to_string(c + 1) + " repeats a variable");
  }
  for (int v = 0; v < f.num_vars; ++v)
    if (occurrences[v] > 3)
      throw ValidationError("variable x" + std::to_string(v + 1) + " occurs " +
                            std::to_string(occurrences[v]) + " times, more than three");
}

std::vector<int> occurrence_counts(const SatFormula& f) {
  std::vector<int> occurrences(f.num_vars, 0);
  for (const auto& clause : f.clauses)
    for (int v : clause) ++occurrences[v];
  return occurrences;
}

bool satisfies_one_in_three(const SatFormula& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.num_vars)
    throw ValidationError("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(f.num_vars) + " variables");
  for (const auto& clause : f.clauses) {
    int trues = 0;
    for (int v : clause) trues += a[v] ? 1 : 0;
    if (trues != 1) return false;
  }
  return true;
}

}  // namespace smtr
