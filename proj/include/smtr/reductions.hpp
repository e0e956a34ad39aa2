#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smtr/instance.hpp"
#include "smtr/sat.hpp"

namespace smtr {

// A constructed instance plus the bookkeeping needed to map witnesses back:
// a role name per vertex, a tag per edge, and the master list when the
// construction provides one.
struct ReductionOutput {
  Instance instance;
  RestrictedEdgeSets restricted;
  std::vector<std::string> man_roles;
  std::vector<std::string> woman_roles;
  std::vector<std::pair<Edge, std::string>> edge_tags;  // sorted by edge, covers every edge
  std::optional<MasterList> master;

  const std::string& tag(Edge e) const;
};

// Perfect-matching existence to single-forbidden-edge stability. The output
// is complete bipartite on two extra vertices per side; the lone forbidden
// edge sits last in both of its endpoints' lists. Edge tags record the
// construction stage (0 = source edges, 4 = the two closing edges).
struct Forbidden1Reduction {
  Instance source;
  ReductionOutput out;
  int u1 = -1, u2 = -1;  // added men
  int w1 = -1, w2 = -1;  // added women
  Edge forbidden_edge() const { return {u2, w2}; }
};

Forbidden1Reduction reduce_perfect_to_forbidden1(const Instance& source);

// Source witness to constructed witness: M' = M + {u1 w2, u2 w1}.
// Requires a perfect weakly stable source matching.
Matching forbidden1_forward_witness(const Forbidden1Reduction& red, const Matching& source_matching);

// Constructed witness back to the source: strips the two closing edges.
// Requires the input to be weakly stable and to avoid the forbidden edge.
Matching forbidden1_backward_witness(const Forbidden1Reduction& red, const Matching& constructed);

// Drops the forbidden edge of an almost-trivial instance: complete bipartite,
// forbidden edge worst-ranked at both endpoints. Ranks renormalize.
Instance reduce_forbidden1_to_dense(const Instance& inst, Edge forbidden);
Instance reduce_forbidden1_to_dense(const Forbidden1Reduction& red);

// 1-in-3 positive 3-SAT to stability with free edges. Every variable must
// occur exactly three times. Men are the z, w, b vertices; women the y, c, a
// vertices. F is exactly the 3n z-y edges; the women's lists follow the
// emitted master list over men.
struct SatFreeReduction {
  SatFormula formula;
  ReductionOutput out;
  int n = 0;                              // variables
  int m = 0;                              // clauses (equals n here)
  std::vector<std::array<int, 3>> occ;    // per variable: its clauses, ascending

  int z_man(int var, int j) const { return 6 * var + j; }
  int w_man(int var, int j) const { return 6 * var + 3 + j; }
  int b_man(int clause) const { return 6 * n + clause; }
  int y_woman(int var, int j) const { return 3 * var + j; }
  int c_woman(int clause) const { return 3 * n + clause; }
  int a_woman(int clause) const { return 3 * n + m + clause; }
};

SatFreeReduction reduce_sat_to_ssmti_free(const SatFormula& f);

// Exactly-one-in-three assignment to a super-stable matching: true variables
// take their interconnecting and free edges, false ones pair w with y, and
// every clause keeps a_i b_i.
Matching sat_forward_witness(const SatFreeReduction& red, const Assignment& a);

// Strongly stable matching back to an assignment: a variable is true iff all
// three of its interconnecting edges are matched.
Assignment sat_backward_witness(const SatFreeReduction& red, const Matching& m);

// Adds every missing man-woman pair as a free edge in a single new worst tie
// group at both endpoints. Stability verdicts (strong and super, free-aware)
// are preserved in both directions.
std::pair<Instance, RestrictedEdgeSets> complete_with_free(const Instance& inst,
                                                           const RestrictedEdgeSets& r);

// Seeded generators. Identical arguments give identical results on every
// platform; no std::uniform_* involved.
Instance gen_random_smti(int n_men, int n_women, double edge_density, double tie_probability,
                         unsigned long seed);
SatFormula gen_random_1in3(int n, unsigned long seed);

}  // namespace smtr
