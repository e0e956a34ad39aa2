#include "smtr/solvers.hpp"

#include <algorithm>
#include <queue>

namespace smtr {

Matching solve_weak(const Instance& inst) {
  int n_men = inst.num_men();
  int n_women = inst.num_women();
  // Flattened strict lists; groups are stored sorted, so this is the
  // ascending-id linear extension.
  std::vector<std::vector<int>> choice(n_men);
  for (int u = 0; u < n_men; ++u)
    for (const auto& group : inst.pref_list(Side::Men, u))
      choice[u].insert(choice[u].end(), group.begin(), group.end());

  std::vector<int> next(n_men, 0), man_to(n_men, -1), woman_to(n_women, -1);
  std::queue<int> free_men;
  for (int u = 0; u < n_men; ++u) free_men.push(u);
  auto woman_prefers = [&](int w, int u, int over) {
    int ru = inst.woman_rank(w, u), rv = inst.woman_rank(w, over);
    return ru < rv || (ru == rv && u < over);
  };
  while (!free_men.empty()) {
    int u = free_men.front();
    free_men.pop();
    if (man_to[u] != -1) continue;
    while (next[u] < static_cast<int>(choice[u].size())) {
      int w = choice[u][next[u]++];
      int cur = woman_to[w];
      if (cur != -1 && !woman_prefers(w, u, cur)) continue;
      if (cur != -1) {
        man_to[cur] = -1;
        free_men.push(cur);
      }
      man_to[u] = w;
      woman_to[w] = u;
      break;
    }
  }
  std::vector<Edge> edges;
  for (int u = 0; u < n_men; ++u)
    if (man_to[u] != -1) edges.push_back({u, man_to[u]});
  return Matching::from_edges(inst, edges);
}

Matching solve_weak_with_free(const Instance& inst, const std::vector<Edge>& free_edges) {
  validate_restrictions(inst, {{}, {}, free_edges});
  return solve_weak(inst);
}

namespace {

// Man-by-man backtracking: decide men in id order (a decided man is matched
// or stays unmatched for the whole subtree). A woman is final once she is
// matched or has no undecided neighbor left. Relations between a decided man
// and a final woman are fixed, so any blocking pair among them kills the
// branch exactly.
class ManSearch {
 public:
  ManSearch(const Instance& inst, const std::vector<Edge>& forbidden,
            const std::vector<Edge>& forced, StabilityLevel level)
      : inst_(inst), level_(level), restricted_{forbidden, forced, {}} {
    int n_men = inst.num_men(), n_women = inst.num_women();
    man_nbrs_.resize(n_men);
    for (int u = 0; u < n_men; ++u) man_nbrs_[u] = inst.neighbors(Side::Men, u);
    woman_nbrs_.resize(n_women);
    for (int w = 0; w < n_women; ++w) woman_nbrs_[w] = inst.neighbors(Side::Women, w);
    forbidden_.assign(n_men, {});
    for (Edge e : forbidden) forbidden_[e.man].push_back(e.woman);

    man_to_.assign(n_men, kUndecided);
    woman_to_.assign(n_women, -1);
    for (Edge e : forced) {
      if (!inst.has_edge(e) || (man_to_[e.man] != kUndecided && man_to_[e.man] != e.woman) ||
          (woman_to_[e.woman] != -1 && woman_to_[e.woman] != e.man)) {
        feasible_ = false;
        return;
      }
      man_to_[e.man] = e.woman;
      woman_to_[e.woman] = e.man;
    }
    undecided_.assign(n_women, 0);
    for (int w = 0; w < n_women; ++w)
      for (int u : woman_nbrs_[w])
        if (man_to_[u] == kUndecided) ++undecided_[w];
    for (Edge e : inst.edges())
      if (man_to_[e.man] != kUndecided && man_to_[e.man] != e.woman && woman_final(e.woman) &&
          edge_blocks(e.man, e.woman)) {
        feasible_ = false;
        return;
      }
  }

  std::optional<Matching> run() {
    if (!feasible_) return std::nullopt;
    if (!dfs(0)) return std::nullopt;
    std::vector<Edge> edges;
    for (int u = 0; u < inst_.num_men(); ++u)
      if (man_to_[u] >= 0) edges.push_back({u, man_to_[u]});
    return Matching::from_edges(inst_, edges);
  }

 private:
  static constexpr int kUndecided = -2;

  bool woman_final(int w) const { return woman_to_[w] != -1 || undecided_[w] == 0; }

  // Exact blocking test for a decided man and a final woman, edge not in M.
  bool edge_blocks(int u, int w) const {
    bool man_better = true, man_ok = true;
    if (man_to_[u] >= 0) {
      int re = inst_.man_rank(u, w), rc = inst_.man_rank(u, man_to_[u]);
      man_better = re < rc;
      man_ok = re <= rc;
    }
    bool woman_better = true, woman_ok = true;
    if (woman_to_[w] != -1) {
      int re = inst_.woman_rank(w, u), rc = inst_.woman_rank(w, woman_to_[w]);
      woman_better = re < rc;
      woman_ok = re <= rc;
    }
    switch (level_) {
      case StabilityLevel::Weak: return man_better && woman_better;
      case StabilityLevel::Strong: return (man_better && woman_ok) || (woman_better && man_ok);
      case StabilityLevel::Super: return man_ok && woman_ok;
    }
    return false;
  }

  // Decides man u (w = -1 leaves him unmatched), updates finality counters
  // and checks every decided-final pair this decision creates.
  bool apply(int u, int w, std::vector<int>& finalized) {
    man_to_[u] = w;
    if (w != -1) woman_to_[w] = u;
    for (int x : man_nbrs_[u]) {
      --undecided_[x];
      if (undecided_[x] == 0 && woman_to_[x] == -1) finalized.push_back(x);
    }
    if (w != -1) finalized.push_back(w);
    bool ok = true;
    for (int x : man_nbrs_[u])
      if (x != w && woman_final(x) && edge_blocks(u, x)) {
        ok = false;
        break;
      }
    if (ok)
      for (int x : finalized) {
        for (int u2 : woman_nbrs_[x])
          if (u2 != u && man_to_[u2] != kUndecided && man_to_[u2] != x && edge_blocks(u2, x)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
    return ok;
  }

  void undo(int u, int w) {
    for (int x : man_nbrs_[u]) ++undecided_[x];
    if (w != -1) woman_to_[w] = -1;
    man_to_[u] = kUndecided;
  }

  bool dfs(int d) {
    while (d < inst_.num_men() && man_to_[d] != kUndecided) ++d;
    if (d == inst_.num_men()) {
      std::vector<Edge> edges;
      for (int u = 0; u < inst_.num_men(); ++u)
        if (man_to_[u] >= 0) edges.push_back({u, man_to_[u]});
      return verify_stable(inst_, restricted_, Matching::from_edges(inst_, edges), level_).ok();
    }
    std::vector<int> finalized;
    for (int w : man_nbrs_[d]) {
      if (woman_to_[w] != -1) continue;
      if (std::find(forbidden_[d].begin(), forbidden_[d].end(), w) != forbidden_[d].end()) continue;
      finalized.clear();
      if (apply(d, w, finalized) && dfs(d + 1)) return true;
      undo(d, w);
    }
    finalized.clear();
    if (apply(d, -1, finalized) && dfs(d + 1)) return true;
    undo(d, -1);
    return false;
  }

  const Instance& inst_;
  StabilityLevel level_;
  RestrictedEdgeSets restricted_;
  std::vector<std::vector<int>> man_nbrs_, woman_nbrs_, forbidden_;
  std::vector<int> man_to_, woman_to_, undecided_;
  bool feasible_ = true;
};

// Shared backend: forced conflicts yield "none" instead of an error so the
// FPT driver can feed it arbitrary subsets.
std::optional<Matching> solve_restricted(const Instance& inst, const std::vector<Edge>& forbidden,
                                         const std::vector<Edge>& forced, StabilityLevel level) {
  return ManSearch(inst, forbidden, forced, level).run();
}

Instance delete_edges(const Instance& inst, const std::vector<Edge>& deleted) {
  std::vector<PrefList> men(inst.num_men()), women(inst.num_women());
  auto gone = [&](Edge e) { return std::find(deleted.begin(), deleted.end(), e) != deleted.end(); };
  for (int u = 0; u < inst.num_men(); ++u)
    for (const auto& group : inst.pref_list(Side::Men, u)) {
      std::vector<int> kept;
      for (int w : group)
        if (!gone({u, w})) kept.push_back(w);
      if (!kept.empty()) men[u].push_back(std::move(kept));
    }
  for (int w = 0; w < inst.num_women(); ++w)
    for (const auto& group : inst.pref_list(Side::Women, w)) {
      std::vector<int> kept;
      for (int u : group)
        if (!gone({u, w})) kept.push_back(u);
      if (!kept.empty()) women[w].push_back(std::move(kept));
    }
  return build_instance(std::move(men), std::move(women));
}

}  // namespace

std::optional<Matching> solve_super(const Instance& inst, const RestrictedEdgeSets& r) {
  validate_restrictions(inst, r);
  if (!r.free.empty()) throw ValidationError("free edges are not supported here, use the fpt solver");
  return solve_restricted(inst, r.forbidden, r.forced, StabilityLevel::Super);
}

std::optional<Matching> solve_strong(const Instance& inst, const RestrictedEdgeSets& r) {
  validate_restrictions(inst, r);
  if (!r.free.empty()) throw ValidationError("free edges are not supported here, use the fpt solver");
  return solve_restricted(inst, r.forbidden, r.forced, StabilityLevel::Strong);
}

FptOutcome solve_free_fpt(const Instance& inst, const RestrictedEdgeSets& r, StabilityLevel level,
                          bool allow_forced_forbidden) {
  if (level == StabilityLevel::Weak)
    throw ValidationError("the fpt solver handles strong and super stability only");
  validate_restrictions(inst, r);
  if (!allow_forced_forbidden && (!r.forbidden.empty() || !r.forced.empty()))
    throw ValidationError("forbidden or forced edges present, pass allow_forced_forbidden");

  std::vector<Edge> free_sorted = r.free;
  std::sort(free_sorted.begin(), free_sorted.end());
  int k = static_cast<int>(free_sorted.size());
  if (k > 25) throw ValidationError("too many free edges for subset enumeration");

  FptOutcome out;
  for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
    std::vector<Edge> kept_free, deleted;
    for (int i = 0; i < k; ++i)
      ((mask >> i) & 1 ? kept_free : deleted).push_back(free_sorted[i]);
    Instance sub = delete_edges(inst, deleted);
    std::vector<Edge> forced = r.forced;
    forced.insert(forced.end(), kept_free.begin(), kept_free.end());
    ++out.subproblem_calls;
    if (auto m = solve_restricted(sub, r.forbidden, forced, level)) {
      Matching lifted = Matching::from_edges(inst, m->edges());
      if (!verify_stable(inst, r, lifted, level).ok())
        throw std::logic_error("fpt witness failed verification in the original instance");
      out.matching = std::move(lifted);
      return out;
    }
  }
  return out;
}

}  // namespace smtr
