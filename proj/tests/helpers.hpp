#pragma once

#include <random>
#include <vector>

#include "smtr/instance.hpp"

namespace smtr_test {

// Terse instance builder for literal test data.
inline smtr::Instance make(std::vector<smtr::PrefList> men, std::vector<smtr::PrefList> women) {
  return smtr::build_instance(std::move(men), std::move(women));
}

// The one-edge instance used all over the examples.
inline smtr::Instance one_edge() { return make({{{0}}}, {{{0}}}); }

inline smtr::Matching matching(const smtr::Instance& inst, std::vector<smtr::Edge> edges) {
  return smtr::Matching::from_edges(inst, edges);
}

// Deterministic picker for property tests. Not the library generator: tests
// that compare against the generator need an independent source.
class Picker {
 public:
  explicit Picker(unsigned long seed) : rng_(seed) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<unsigned long>(n)); }
  bool chance(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000; }

  // A uniform-ish random matching: walk the edges in random order, keep what fits.
  smtr::Matching random_matching(const smtr::Instance& inst) {
    std::vector<smtr::Edge> order = inst.edges();
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
      std::swap(order[i], order[below(i + 1)]);
    std::vector<bool> man_used(inst.num_men()), woman_used(inst.num_women());
    std::vector<smtr::Edge> picked;
    for (smtr::Edge e : order) {
      if (man_used[e.man] || woman_used[e.woman]) continue;
      if (!chance(0.6)) continue;
      man_used[e.man] = woman_used[e.woman] = true;
      picked.push_back(e);
    }
    return smtr::Matching::from_edges(inst, picked);
  }

  // Disjoint random forbidden/forced/free sets; forced kept a matching.
  smtr::RestrictedEdgeSets random_restrictions(const smtr::Instance& inst, double p_forbidden,
                                               double p_forced, double p_free) {
    smtr::RestrictedEdgeSets r;
    std::vector<bool> man_forced(inst.num_men()), woman_forced(inst.num_women());
    for (smtr::Edge e : inst.edges()) {
      double roll = static_cast<double>(rng_() % 1000000) / 1000000;
      if (roll < p_forbidden) {
        r.forbidden.push_back(e);
      } else if (roll < p_forbidden + p_forced) {
        if (man_forced[e.man] || woman_forced[e.woman]) continue;
        man_forced[e.man] = woman_forced[e.woman] = true;
        r.forced.push_back(e);
      } else if (roll < p_forbidden + p_forced + p_free) {
        r.free.push_back(e);
      }
    }
    return r;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace smtr_test
