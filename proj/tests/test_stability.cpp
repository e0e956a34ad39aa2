#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "smtr/reductions.hpp"
#include "smtr/stability.hpp"

using namespace smtr;
using smtr_test::make;
using smtr_test::matching;
using smtr_test::one_edge;

namespace {

bool subset(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("relation_at") {
  Instance inst = make({{{0}, {1}}}, {{{0}}, {{0}}});
  Matching empty = Matching::empty(inst);
  CHECK(relation_at(inst, empty, Side::Men, 0, {0, 0}) == Relation::StrictlyBetter);

  Matching first = matching(inst, {{0, 0}});
  CHECK(relation_at(inst, first, Side::Men, 0, {0, 0}) == Relation::Equal);
  CHECK(relation_at(inst, first, Side::Men, 0, {0, 1}) == Relation::StrictlyWorse);

  Matching second = matching(inst, {{0, 1}});
  CHECK(relation_at(inst, second, Side::Men, 0, {0, 0}) == Relation::StrictlyBetter);

  CHECK_THROWS_AS(relation_at(inst, empty, Side::Women, 1, {0, 0}), ValidationError);
}

TEST_CASE("classify_edge hits all three definitions") {
  SUBCASE("both ends unmatched") {
    Instance inst = one_edge();
    BlockingFlags f = classify_edge(inst, Matching::empty(inst), {0, 0});
    CHECK(f.weak);
    CHECK(f.strong);
    CHECK(f.super);
  }
  SUBCASE("one end strictly better, the other tied") {
    Instance inst = make({{{1}, {0}}, {{1}}}, {{{0}}, {{0, 1}}});
    Matching m = matching(inst, {{0, 0}, {1, 1}});
    BlockingFlags f = classify_edge(inst, m, {0, 1});
    CHECK_FALSE(f.weak);
    CHECK(f.strong);
    CHECK(f.super);
  }
  SUBCASE("both ends tied") {
    Instance inst = make({{{0, 1}}, {{0, 1}}}, {{{0, 1}}, {{0, 1}}});
    Matching m = matching(inst, {{0, 0}, {1, 1}});
    BlockingFlags f = classify_edge(inst, m, {0, 1});
    CHECK_FALSE(f.weak);
    CHECK_FALSE(f.strong);
    CHECK(f.super);
  }
  SUBCASE("matching edges cannot be classified") {
    Instance inst = one_edge();
    CHECK_THROWS_AS(classify_edge(inst, matching(inst, {{0, 0}}), {0, 0}), ValidationError);
  }
}

TEST_CASE("empty matching on the one-edge instance is blocked three ways") {
  Instance inst = one_edge();
  BlockingReport report(inst, Matching::empty(inst));
  std::vector<Edge> expect{{0, 0}};
  CHECK(report.weakly_blocking() == expect);
  CHECK(report.strongly_blocking() == expect);
  CHECK(report.super_blocking() == expect);
}

TEST_CASE("blocking sets form a chain on random pairs") {
  smtr_test::Picker pick(31);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = gen_random_smti(1 + pick.below(5), 1 + pick.below(5), 0.7, 0.4, 4000 + trial);
    Matching m = pick.random_matching(inst);
    BlockingReport report(inst, m);
    CHECK(subset(report.weakly_blocking(), report.strongly_blocking()));
    CHECK(subset(report.strongly_blocking(), report.super_blocking()));
    for (Edge e : report.super_blocking()) CHECK_FALSE(m.contains(e));
  }
}

TEST_CASE("verify_stable checks all three clauses") {
  Instance inst = one_edge();
  Edge uw{0, 0};
  Matching empty = Matching::empty(inst);
  Matching full = matching(inst, {uw});

  SUBCASE("forced edge missing") {
    // The absent edge also blocks, so both clauses fire.
    VerifyResult res = verify_stable(inst, {{}, {uw}, {}}, empty, StabilityLevel::Weak);
    CHECK_FALSE(res.ok());
    CHECK(res.forced_missing == std::vector<Edge>{uw});
    CHECK(res.describe() ==
          "forced edge m1-w1 is missing\n"
          "edge m1-w1 blocks and is not free\n");
  }
  SUBCASE("forced edge missing without a block") {
    Instance two = make({{{0}, {1}}}, {{{0}}, {{0}}});
    VerifyResult res =
        verify_stable(two, {{}, {{0, 1}}, {}}, matching(two, {{0, 0}}), StabilityLevel::Super);
    CHECK_FALSE(res.ok());
    CHECK(res.describe() == "forced edge m1-w2 is missing\n");
  }
  SUBCASE("forbidden edge used") {
    VerifyResult res = verify_stable(inst, {{uw}, {}, {}}, full, StabilityLevel::Weak);
    CHECK_FALSE(res.ok());
    CHECK(res.forbidden_in_matching == std::vector<Edge>{uw});
  }
  SUBCASE("free blocking edge is tolerated") {
    CHECK(verify_stable(inst, {{}, {}, {uw}}, empty, StabilityLevel::Super).ok());
    VerifyResult res = verify_stable(inst, {{}, {}, {}}, empty, StabilityLevel::Super);
    CHECK_FALSE(res.ok());
    CHECK(res.blocking_not_free == std::vector<Edge>{uw});
  }
  SUBCASE("the matched edge satisfies everything") {
    CHECK(verify_stable(inst, {{}, {}, {}}, full, StabilityLevel::Super).ok());
  }
}

TEST_CASE("verification weakens with the level") {
  smtr_test::Picker pick(43);
  int super_ok = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = gen_random_smti(1 + pick.below(4), 1 + pick.below(4), 0.8, 0.5, 5000 + trial);
    if (inst.num_edges() == 0) continue;
    Matching m = pick.random_matching(inst);
    RestrictedEdgeSets r = pick.random_restrictions(inst, 0.1, 0.1, 0.2);
    bool sup = verify_stable(inst, r, m, StabilityLevel::Super).ok();
    bool str = verify_stable(inst, r, m, StabilityLevel::Strong).ok();
    bool weak = verify_stable(inst, r, m, StabilityLevel::Weak).ok();
    if (sup) {
      ++super_ok;
      CHECK(str);
    }
    if (str) CHECK(weak);
  }
  CHECK(super_ok > 0);
}

TEST_CASE("level names") {
  CHECK(level_name(StabilityLevel::Weak) == "weak");
  CHECK(level_name(StabilityLevel::Strong) == "strong");
  CHECK(level_name(StabilityLevel::Super) == "super");
}
