#include "smtr/bench.hpp"

#include <chrono>
#include <sstream>

#include "smtr/solvers.hpp"

namespace smtr {

BenchInstance unsat_free_family(int k) {
  if (k < 0 || k > 10) throw ValidationError("the family covers k = 0..10");
  // Core: man 1 ties women 1 and 2, each of whom lists only him. Whatever
  // happens, one of his two edges strongly blocks, and neither is ever free.
  // Extras: men 2..3 and women 3..7 form a complete block with aligned strict
  // preferences; the first k block edges are free.
  std::vector<PrefList> men(3), women(7);
  men[0] = {{0, 1}};
  for (int u = 1; u <= 2; ++u)
    for (int w = 2; w < 7; ++w) men[u].push_back({w});
  women[0] = {{0}};
  women[1] = {{0}};
  for (int w = 2; w < 7; ++w) women[w] = {{1}, {2}};

  BenchInstance out;
  out.instance = build_instance(std::move(men), std::move(women));
  for (int u = 1; u <= 2 && static_cast<int>(out.restricted.free.size()) < k; ++u)
    for (int w = 2; w < 7 && static_cast<int>(out.restricted.free.size()) < k; ++w)
      out.restricted.free.push_back({u, w});
  validate_restrictions(out.instance, out.restricted);
  return out;
}

std::vector<BenchRow> bench_fpt(StabilityLevel level, int k_min, int k_max) {
  if (k_min < 0 || k_max < k_min) throw ValidationError("bad k range");
  std::vector<BenchRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    BenchInstance family = unsat_free_family(k);
    auto start = std::chrono::steady_clock::now();
    FptOutcome result = solve_free_fpt(family.instance, family.restricted, level);
    auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.k = k;
    row.calls = result.subproblem_calls;
    row.witness = result.matching.has_value();
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "k,calls,wall_ms\n";
  for (const BenchRow& row : rows) out << row.k << "," << row.calls << "," << row.wall_ms << "\n";
  return out.str();
}

}  // namespace smtr
