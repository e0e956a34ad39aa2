#pragma once

#include <string>
#include <vector>

#include "smtr/instance.hpp"
#include "smtr/stability.hpp"

namespace smtr {

struct BenchInstance {
  Instance instance;
  RestrictedEdgeSets restricted;  // k free edges, nothing else
};

// Fixed-size family (3+7 vertices, 12 edges) with no strongly or super
// stable matching for any k in 0..10: a one-man core whose tie always leaves
// a non-free blocking edge, plus a 2x5 block the free set draws from.
BenchInstance unsat_free_family(int k);

struct BenchRow {
  int k = 0;
  long long calls = 0;
  bool witness = false;
  double wall_ms = 0.0;
};

// Runs the fpt solver over the family for each k, recording subproblem call
// counts and wall time. Call count is exactly 2^k on every row since the
// family has no solution.
std::vector<BenchRow> bench_fpt(StabilityLevel level, int k_min, int k_max);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace smtr
