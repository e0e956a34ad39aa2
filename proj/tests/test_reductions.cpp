#include <algorithm>
#include <map>
#include <optional>

#include "doctest.h"
#include "helpers.hpp"
#include "smtr/io.hpp"
#include "smtr/oracle.hpp"
#include "smtr/reductions.hpp"
#include "smtr/solvers.hpp"

using namespace smtr;
using smtr_test::make;

namespace {

// The 3+3 example from the construction's worked figure: five edges, one tie.
Instance figure_source() {
  return make({{{0, 1}}, {{0}}, {{2}, {1}}}, {{{0}, {1}}, {{0}, {2}}, {{2}}});
}

std::map<std::string, int> tag_counts(const ReductionOutput& out) {
  std::map<std::string, int> counts;
  for (const auto& [edge, tag] : out.edge_tags) ++counts[tag];
  return counts;
}

int max_tie(const Instance& inst) {
  int best = 0;
  for (Side side : {Side::Men, Side::Women})
    for (int v = 0; v < inst.side_size(side); ++v)
      for (const auto& group : inst.pref_list(side, v))
        best = std::max(best, static_cast<int>(group.size()));
  return best;
}

}  // namespace

TEST_CASE("forbidden-edge construction on the figure instance") {
  Instance source = figure_source();
  Forbidden1Reduction red = reduce_perfect_to_forbidden1(source);
  const Instance& built = red.out.instance;

  CHECK(built.num_men() == 5);
  CHECK(built.num_women() == 5);
  CHECK(built.num_edges() == 25);
  CHECK(red.u1 == 3);
  CHECK(red.u2 == 4);
  CHECK(red.w1 == 3);
  CHECK(red.w2 == 4);
  CHECK(red.out.restricted.forbidden == std::vector<Edge>{{4, 4}});
  CHECK(red.out.restricted.forced.empty());
  CHECK(red.out.restricted.free.empty());

  std::map<std::string, int> counts = tag_counts(red.out);
  CHECK(counts["0"] == 5);
  CHECK(counts["1"] == 6);
  CHECK(counts["2"] == 4);
  CHECK(counts["3"] == 8);
  CHECK(counts["4"] == 2);

  // Source edges keep their ranks.
  for (Edge e : source.edges()) {
    CHECK(built.man_rank(e.man, e.woman) == source.man_rank(e.man, e.woman));
    CHECK(built.woman_rank(e.woman, e.man) == source.woman_rank(e.woman, e.man));
  }

  // The forbidden edge sits last at both endpoints.
  Edge p = red.forbidden_edge();
  CHECK(built.rank(Side::Men, p.man, p) == built.num_groups(Side::Men, p.man));
  CHECK(built.rank(Side::Women, p.woman, p) == built.num_groups(Side::Women, p.woman));

  // No new ties appear.
  CHECK(max_tie(built) == max_tie(source));

  CHECK(red.out.tag({4, 4}) == "4");
  CHECK(red.out.man_roles == std::vector<std::string>{"src_m1", "src_m2", "src_m3", "u1", "u2"});
}

TEST_CASE("every list orders the construction stages strictly") {
  smtr_test::Picker pick(103);
  for (int trial = 0; trial < 40; ++trial) {
    Instance source = gen_random_smti(1 + pick.below(4), 1 + pick.below(4), 0.6, 0.4, 18000 + trial);
    Forbidden1Reduction red = reduce_perfect_to_forbidden1(source);
    const Instance& built = red.out.instance;
    CHECK(built.num_edges() == built.num_men() * built.num_women());
    for (Side side : {Side::Men, Side::Women}) {
      for (int v = 0; v < built.side_size(side); ++v) {
        for (int a : built.neighbors(side, v)) {
          for (int b : built.neighbors(side, v)) {
            Edge ea = side == Side::Men ? Edge{v, a} : Edge{a, v};
            Edge eb = side == Side::Men ? Edge{v, b} : Edge{b, v};
            int sa = red.out.tag(ea)[0] - '0';
            int sb = red.out.tag(eb)[0] - '0';
            if (sa < sb) CHECK(built.rank(side, v, ea) < built.rank(side, v, eb));
          }
        }
      }
    }
  }
}

TEST_CASE("degenerate source still yields the frame") {
  Forbidden1Reduction red = reduce_perfect_to_forbidden1(build_instance({}, {}));
  CHECK(red.out.instance.num_men() == 2);
  CHECK(red.out.instance.num_women() == 2);
  CHECK(red.out.instance.num_edges() == 4);
  CHECK(red.out.restricted.forbidden == std::vector<Edge>{{1, 1}});

  Matching forward = forbidden1_forward_witness(red, Matching::empty(red.source));
  CHECK(forward.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(verify_stable(red.out.instance, red.out.restricted, forward, StabilityLevel::Weak).ok());
  CHECK(forbidden1_backward_witness(red, forward).size() == 0);
}

TEST_CASE("witnesses travel both ways across the forbidden-edge construction") {
  Instance source = figure_source();
  Forbidden1Reduction red = reduce_perfect_to_forbidden1(source);

  std::optional<Matching> m = oracle_perfect_weak(source);
  REQUIRE(m.has_value());

  Matching lifted = forbidden1_forward_witness(red, *m);
  CHECK(lifted.size() == m->size() + 2);
  CHECK(lifted.partner(Side::Men, red.u1) == red.w2);
  CHECK(lifted.partner(Side::Men, red.u2) == red.w1);
  CHECK(verify_stable(red.out.instance, red.out.restricted, lifted, StabilityLevel::Weak).ok());

  CHECK(forbidden1_backward_witness(red, lifted) == *m);

  SUBCASE("forward demands a perfect stable input") {
    CHECK_THROWS_AS(forbidden1_forward_witness(red, Matching::empty(source)), ValidationError);
  }
  SUBCASE("backward rejects the forbidden edge") {
    std::vector<Edge> edges = m->edges();
    edges.push_back({red.u1, red.w1});
    edges.push_back({red.u2, red.w2});
    Matching bad = Matching::from_edges(red.out.instance, edges);
    CHECK_THROWS_AS(forbidden1_backward_witness(red, bad), ValidationError);
  }
}

TEST_CASE("existence carries over the forbidden-edge construction") {
  // The two sides must match: a perfect matching needs every vertex covered,
  // and the claim's reverse direction counts vertices side against side.
  smtr_test::Picker pick(107);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + pick.below(3);
    Instance source = gen_random_smti(n, n, 0.6, 0.4, 19000 + trial);
    Forbidden1Reduction red = reduce_perfect_to_forbidden1(source);
    bool source_has = oracle_perfect_weak(source).has_value();
    bool built_has =
        oracle_exists(red.out.instance, red.out.restricted, StabilityLevel::Weak).has_value();
    CHECK(source_has == built_has);
  }
}

TEST_CASE("dense construction drops exactly the forbidden edge") {
  Forbidden1Reduction red = reduce_perfect_to_forbidden1(figure_source());
  Instance dense = reduce_forbidden1_to_dense(red);
  CHECK(dense.num_edges() == 24);
  CHECK_FALSE(dense.has_edge(red.forbidden_edge()));
  Instance via_edge = reduce_forbidden1_to_dense(red.out.instance, red.forbidden_edge());
  CHECK(serialize_instance(dense, {}) == serialize_instance(via_edge, {}));

  // Ranks are untouched for the surviving edges.
  for (Edge e : dense.edges()) {
    CHECK(dense.man_rank(e.man, e.woman) == red.out.instance.man_rank(e.man, e.woman));
    CHECK(dense.woman_rank(e.woman, e.man) == red.out.instance.woman_rank(e.woman, e.man));
  }

  Forbidden1Reduction tiny = reduce_perfect_to_forbidden1(build_instance({}, {}));
  CHECK(reduce_forbidden1_to_dense(tiny).num_edges() == 3);
}

TEST_CASE("dense construction enforces its precondition") {
  // Complete 2x2, but the would-be forbidden edge is ranked first.
  Instance inst = make({{{0}, {1}}, {{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}});
  CHECK_THROWS_AS(reduce_forbidden1_to_dense(inst, {0, 0}), ValidationError);
  // Incomplete input, even though the edge to drop is ranked last at both ends.
  Instance sparse = make({{{0}, {1}}, {{1}}}, {{{0}}, {{0}, {1}}});
  CHECK_THROWS_WITH_AS(reduce_forbidden1_to_dense(sparse, {1, 1}),
                       doctest::Contains("not complete"), ValidationError);
}

TEST_CASE("existence carries over the dense construction") {
  smtr_test::Picker pick(109);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + pick.below(3);
    Instance source = gen_random_smti(n, n, 0.6, 0.4, 20000 + trial);
    Forbidden1Reduction red = reduce_perfect_to_forbidden1(source);
    Instance dense = reduce_forbidden1_to_dense(red);
    bool avoiding =
        oracle_exists(red.out.instance, red.out.restricted, StabilityLevel::Weak).has_value();
    CHECK(avoiding == oracle_perfect_weak(dense).has_value());
  }
}

namespace {

SatFormula triple_clause_formula() { return {3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}}; }

}  // namespace

TEST_CASE("formula gadget structure") {
  SatFreeReduction red = reduce_sat_to_ssmti_free(triple_clause_formula());
  const Instance& inst = red.out.instance;

  CHECK(inst.num_men() == 21);
  CHECK(inst.num_women() == 15);
  CHECK(inst.num_men() + inst.num_women() == 36);
  CHECK(inst.num_edges() == 51);
  CHECK(red.out.restricted.free.size() == 9);
  CHECK(red.out.restricted.forbidden.empty());
  CHECK(red.out.restricted.forced.empty());
  CHECK(inst.max_degree() == 4);

  std::map<std::string, int> counts = tag_counts(red.out);
  CHECK(counts["free"] == 9);
  CHECK(counts["variable"] == 27);
  CHECK(counts["interconnecting"] == 9);
  CHECK(counts["clause"] == 6);

  // Free edges are exactly the z-y pairs.
  for (Edge e : red.out.restricted.free) CHECK(red.out.tag(e) == "free");

  REQUIRE(red.out.master.has_value());
  CHECK(red.out.master->over == Side::Men);
  CHECK(conforms_to_master_list(inst, Side::Women, *red.out.master));

  // A clause's collector ties its three incoming edges first, then its b.
  for (int c = 0; c < red.m; ++c) {
    const PrefList& list = inst.pref_list(Side::Women, red.c_woman(c));
    REQUIRE(list.size() == 2);
    CHECK(list[0].size() == 3);
    CHECK(list[1] == std::vector<int>{red.b_man(c)});
  }

  CHECK(red.out.man_roles[red.z_man(0, 0)] == "z_1_1");
  CHECK(red.out.man_roles[red.w_man(1, 2)] == "w_2_3");
  CHECK(red.out.man_roles[red.b_man(2)] == "b_3");
  CHECK(red.out.woman_roles[red.y_woman(2, 1)] == "y_3_2");
  CHECK(red.out.woman_roles[red.a_woman(0)] == "a_1");
  for (const std::string& role : red.out.man_roles) CHECK_FALSE(role.empty());
  for (const std::string& role : red.out.woman_roles) CHECK_FALSE(role.empty());
  CHECK(red.out.edge_tags.size() == static_cast<size_t>(inst.num_edges()));
}

TEST_CASE("formula gadget demands exactly three occurrences") {
  SatFormula f{4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}};
  CHECK_THROWS_AS(reduce_sat_to_ssmti_free(f), ValidationError);
}

TEST_CASE("assignment witnesses travel both ways across the formula gadget") {
  SatFreeReduction red = reduce_sat_to_ssmti_free(triple_clause_formula());

  std::optional<Assignment> a = solve_1in3_bruteforce(red.formula);
  REQUIRE(a.has_value());
  CHECK(*a == Assignment{true, false, false});

  Matching m = sat_forward_witness(red, *a);
  CHECK(m.size() == 15);
  CHECK(verify_stable(red.out.instance, red.out.restricted, m, StabilityLevel::Super).ok());
  CHECK(verify_stable(red.out.instance, red.out.restricted, m, StabilityLevel::Strong).ok());

  CHECK(sat_backward_witness(red, m) == *a);

  SUBCASE("forward needs exactly one true per clause") {
    CHECK_THROWS_AS(sat_forward_witness(red, Assignment{false, false, false}), ValidationError);
    CHECK_THROWS_AS(sat_forward_witness(red, Assignment{true, true, false}), ValidationError);
  }
  SUBCASE("backward needs a strongly stable input") {
    CHECK_THROWS_AS(sat_backward_witness(red, Matching::empty(red.out.instance)), ValidationError);
  }
  SUBCASE("an oracle witness decodes to a valid assignment") {
    std::optional<Matching> witness =
        oracle_exists(red.out.instance, red.out.restricted, StabilityLevel::Strong);
    REQUIRE(witness.has_value());
    Assignment decoded = sat_backward_witness(red, *witness);
    CHECK(satisfies_one_in_three(red.formula, decoded));
  }
}

TEST_CASE("completion with free edges") {
  SUBCASE("complete instances are a fixed point") {
    Instance inst = make({{{0}, {1}}, {{0, 1}}}, {{{0, 1}}, {{0}, {1}}});
    auto [done, r] = complete_with_free(inst, {});
    CHECK(done.num_edges() == 4);
    CHECK(r.free.empty());
    CHECK(done.pref_list(Side::Men, 0) == inst.pref_list(Side::Men, 0));
  }
  SUBCASE("a single edge fills out to the full grid") {
    Instance inst = build_instance({{{0}}, {}}, {{{0}}, {}});
    auto [done, r] = complete_with_free(inst, {});
    CHECK(done.num_edges() == 4);
    CHECK(r.free.size() == 3);
    // The old edge keeps rank 1; everything new is strictly worse.
    CHECK(done.man_rank(0, 0) == 1);
    CHECK(done.man_rank(0, 1) == 2);
    CHECK(done.pref_list(Side::Men, 1) == PrefList{{0, 1}});
    CHECK(done.pref_list(Side::Women, 1) == PrefList{{0, 1}});
  }
  SUBCASE("existing restrictions survive") {
    Instance inst = build_instance({{{0}}, {}}, {{{0}}, {}});
    RestrictedEdgeSets r{{}, {}, {{0, 0}}};
    auto [done, r2] = complete_with_free(inst, r);
    CHECK(r2.free.size() == 4);
    CHECK(r2.is_free({0, 0}));
  }
  SUBCASE("verdicts survive completion") {
    smtr_test::Picker pick(113);
    for (int trial = 0; trial < 20; ++trial) {
      Instance inst = gen_random_smti(1 + pick.below(3), 1 + pick.below(3), 0.5, 0.4, 21000 + trial);
      RestrictedEdgeSets r = pick.random_restrictions(inst, 0.0, 0.0, 0.3);
      auto [done, r2] = complete_with_free(inst, r);
      for (StabilityLevel level : {StabilityLevel::Strong, StabilityLevel::Super}) {
        CHECK(oracle_exists(inst, r, level).has_value() ==
              oracle_exists(done, r2, level).has_value());
      }
    }
  }
}

TEST_CASE("instance generator") {
  Instance a = gen_random_smti(4, 4, 0.7, 0.3, 42);
  Instance b = gen_random_smti(4, 4, 0.7, 0.3, 42);
  CHECK(a.edges() == b.edges());
  for (int u = 0; u < 4; ++u) CHECK(a.pref_list(Side::Men, u) == b.pref_list(Side::Men, u));
  for (int w = 0; w < 4; ++w) CHECK(a.pref_list(Side::Women, w) == b.pref_list(Side::Women, w));

  CHECK(gen_random_smti(3, 5, 1.0, 0.5, 7).num_edges() == 15);

  Instance strict = gen_random_smti(5, 5, 0.8, 0.0, 11);
  CHECK(max_tie(strict) == 1);

  CHECK_THROWS_AS(gen_random_smti(0, 3, 0.5, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(gen_random_smti(3, 3, 0.0, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(gen_random_smti(3, 3, 0.5, 1.5, 1), ValidationError);
}

TEST_CASE("formula generator") {
  SatFormula f = gen_random_1in3(5, 99);
  CHECK(f.num_vars == 5);
  CHECK(f.num_clauses() == 5);
  CHECK_NOTHROW(validate_formula(f));
  CHECK(occurrence_counts(f) == std::vector<int>(5, 3));
  for (const auto& clause : f.clauses) {
    CHECK(clause[0] < clause[1]);
    CHECK(clause[1] < clause[2]);
  }

  SatFormula again = gen_random_1in3(5, 99);
  CHECK(again.clauses == f.clauses);

  CHECK_THROWS_AS(gen_random_1in3(2, 1), ValidationError);
}
