#include "smtr/oracle.hpp"

#include <algorithm>
#include <limits>

namespace smtr {

MatchingEnumerator::MatchingEnumerator(const Instance& inst)
    : inst_(inst),
      man_used_(inst.num_men(), false),
      woman_used_(inst.num_women(), false) {}

std::optional<Matching> MatchingEnumerator::next() {
  const auto& edges = inst_.edges();
  if (fresh_) {
    fresh_ = false;
    return Matching::empty(inst_);
  }
  while (true) {
    while (next_ < static_cast<int>(edges.size())) {
      Edge e = edges[next_];
      if (man_used_[e.man] || woman_used_[e.woman]) {
        ++next_;
        continue;
      }
      man_used_[e.man] = true;
      woman_used_[e.woman] = true;
      chosen_.push_back(next_);
      next_ = chosen_.back() + 1;
      std::vector<Edge> out;
      out.reserve(chosen_.size());
      for (int i : chosen_) out.push_back(edges[i]);
      return Matching::from_edges(inst_, out);
    }
    if (chosen_.empty()) return std::nullopt;
    int last = chosen_.back();
    chosen_.pop_back();
    man_used_[edges[last].man] = false;
    woman_used_[edges[last].woman] = false;
    next_ = last + 1;
  }
}

std::vector<Matching> all_matchings(const Instance& inst) {
  std::vector<Matching> out;
  MatchingEnumerator en(inst);
  while (auto m = en.next()) out.push_back(*m);
  return out;
}

namespace {

constexpr int kUnranked = std::numeric_limits<int>::max();

// DFS over the same lexicographic matching order as MatchingEnumerator.
// A branch is cut only when no descendant (the current node included) can
// verify: some non-free edge is guaranteed to block every completion, or a
// forced edge became unreachable. Forbidden edges are never placed, which
// only skips matchings the verifier would reject.
class StableSearch {
 public:
  StableSearch(const Instance& inst, const RestrictedEdgeSets& r, StabilityLevel level)
      : inst_(inst), level_(level), edges_(inst.edges()) {
    int m = static_cast<int>(edges_.size());
    rank_man_.resize(m);
    rank_woman_.resize(m);
    kind_.assign(m, Kind::Normal);
    for (int i = 0; i < m; ++i) {
      rank_man_[i] = inst.man_rank(edges_[i].man, edges_[i].woman);
      rank_woman_[i] = inst.woman_rank(edges_[i].woman, edges_[i].man);
    }
    auto index_of = [&](Edge e) {
      return static_cast<int>(std::lower_bound(edges_.begin(), edges_.end(), e) - edges_.begin());
    };
    for (Edge e : r.forbidden) kind_[index_of(e)] = Kind::Forbidden;
    for (Edge e : r.free) kind_[index_of(e)] = Kind::Free;
    for (Edge e : r.forced) {
      kind_[index_of(e)] = Kind::Forced;
      forced_.push_back(index_of(e));
    }
  }

  std::optional<Matching> run() {
    man_to_.assign(inst_.num_men(), -1);
    woman_to_.assign(inst_.num_women(), -1);
    best_man_.assign(inst_.num_men(), kUnranked);
    best_woman_.assign(inst_.num_women(), kUnranked);
    chosen_.clear();
    if (dfs(0)) {
      std::vector<Edge> out;
      for (int i : chosen_) out.push_back(edges_[i]);
      return Matching::from_edges(inst_, out);
    }
    return std::nullopt;
  }

 private:
  enum class Kind : unsigned char { Normal, Forbidden, Forced, Free };

  bool dfs(int next) {
    if (hopeless(next)) return false;
    if (current_verifies()) return true;
    for (int i = next; i < static_cast<int>(edges_.size()); ++i) {
      Edge e = edges_[i];
      if (kind_[i] == Kind::Forbidden) continue;
      if (man_to_[e.man] != -1 || woman_to_[e.woman] != -1) continue;
      man_to_[e.man] = e.woman;
      woman_to_[e.woman] = e.man;
      chosen_.push_back(i);
      if (dfs(i + 1)) return true;
      chosen_.pop_back();
      man_to_[e.man] = -1;
      woman_to_[e.woman] = -1;
    }
    return false;
  }

  // Best rank each vertex can still reach in this subtree: its current
  // partner's rank if matched, else the best rank among edges that can still
  // be placed. kUnranked means it stays unmatched.
  void refresh_best(int next) {
    for (int u = 0; u < inst_.num_men(); ++u)
      best_man_[u] = man_to_[u] == -1 ? kUnranked : inst_.man_rank(u, man_to_[u]);
    for (int w = 0; w < inst_.num_women(); ++w)
      best_woman_[w] = woman_to_[w] == -1 ? kUnranked : inst_.woman_rank(w, woman_to_[w]);
    for (int i = next; i < static_cast<int>(edges_.size()); ++i) {
      Edge e = edges_[i];
      if (kind_[i] == Kind::Forbidden) continue;
      if (man_to_[e.man] != -1 || woman_to_[e.woman] != -1) continue;
      best_man_[e.man] = std::min(best_man_[e.man], rank_man_[i]);
      best_woman_[e.woman] = std::min(best_woman_[e.woman], rank_woman_[i]);
    }
  }

  bool hopeless(int next) {
    for (int q : forced_) {
      Edge e = edges_[q];
      if (man_to_[e.man] == e.woman) continue;
      bool placeable = q >= next && man_to_[e.man] == -1 && woman_to_[e.woman] == -1;
      if (!placeable) return true;
    }
    refresh_best(next);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      Edge e = edges_[i];
      if (kind_[i] == Kind::Free) continue;
      if (man_to_[e.man] == e.woman) continue;
      bool placeable = kind_[i] != Kind::Forbidden && i >= next && man_to_[e.man] == -1 &&
                       woman_to_[e.woman] == -1;
      if (placeable) continue;  // the edge may yet enter the matching
      // Relations guaranteed in every completion of this branch.
      bool man_better = rank_man_[i] < best_man_[e.man];
      bool man_ok = rank_man_[i] <= best_man_[e.man];
      bool woman_better = rank_woman_[i] < best_woman_[e.woman];
      bool woman_ok = rank_woman_[i] <= best_woman_[e.woman];
      bool blocks = false;
      switch (level_) {
        case StabilityLevel::Weak: blocks = man_better && woman_better; break;
        case StabilityLevel::Strong:
          blocks = (man_better && woman_ok) || (woman_better && man_ok);
          break;
        case StabilityLevel::Super: blocks = man_ok && woman_ok; break;
      }
      if (blocks) return true;
    }
    return false;
  }

  bool current_verifies() const {
    for (int q : forced_) {
      Edge e = edges_[q];
      if (man_to_[e.man] != e.woman) return false;
    }
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      Edge e = edges_[i];
      if (kind_[i] == Kind::Free) continue;
      if (man_to_[e.man] == e.woman) continue;
      bool man_better = man_to_[e.man] == -1 || rank_man_[i] < inst_.man_rank(e.man, man_to_[e.man]);
      bool man_ok = man_better ||
                    (man_to_[e.man] != -1 && rank_man_[i] == inst_.man_rank(e.man, man_to_[e.man]));
      bool woman_better =
          woman_to_[e.woman] == -1 || rank_woman_[i] < inst_.woman_rank(e.woman, woman_to_[e.woman]);
      bool woman_ok = woman_better || (woman_to_[e.woman] != -1 &&
                                       rank_woman_[i] == inst_.woman_rank(e.woman, woman_to_[e.woman]));
      bool blocks = false;
      switch (level_) {
        case StabilityLevel::Weak: blocks = man_better && woman_better; break;
        case StabilityLevel::Strong:
          blocks = (man_better && woman_ok) || (woman_better && man_ok);
          break;
        case StabilityLevel::Super: blocks = man_ok && woman_ok; break;
      }
      if (blocks) return false;
    }
    return true;
  }

  const Instance& inst_;
  StabilityLevel level_;
  const std::vector<Edge>& edges_;
  std::vector<int> rank_man_, rank_woman_;
  std::vector<Kind> kind_;
  std::vector<int> forced_;
  std::vector<int> man_to_, woman_to_;
  std::vector<int> best_man_, best_woman_;
  std::vector<int> chosen_;
};

}  // namespace

std::optional<Matching> oracle_exists(const Instance& inst, const RestrictedEdgeSets& r,
                                      StabilityLevel level) {
  validate_restrictions(inst, r);
  return StableSearch(inst, r, level).run();
}

std::optional<Matching> oracle_perfect_weak(const Instance& inst) {
  MatchingEnumerator en(inst);
  while (auto m = en.next()) {
    if (!is_perfect(inst, *m)) continue;
    if (blocking_report(inst, *m).weakly_blocking().empty()) return m;
  }
  return std::nullopt;
}

std::set<int> stable_cardinalities(const Instance& inst, StabilityLevel level) {
  std::set<int> sizes;
  RestrictedEdgeSets none;
  MatchingEnumerator en(inst);
  while (auto m = en.next())
    if (verify_stable(inst, none, *m, level).ok()) sizes.insert(m->size());
  return sizes;
}

std::optional<Assignment> solve_1in3_bruteforce(const SatFormula& f) {
  validate_formula(f);
  if (f.num_vars > 30) throw ValidationError("brute force is limited to 30 variables");
  for (unsigned long mask = 0; mask < (1ul << f.num_vars); ++mask) {
    Assignment a(f.num_vars);
    for (int v = 0; v < f.num_vars; ++v) a[v] = (mask >> v) & 1;
    if (satisfies_one_in_three(f, a)) return a;
  }
  return std::nullopt;
}

}  // namespace smtr
