#include "smtr/instance.hpp"

#include <algorithm>
#include <set>

namespace smtr {

std::string edge_name(Edge e) {
  return "m" + std::to_string(e.man + 1) + "-w" + std::to_string(e.woman + 1);
}

namespace {

std::string vertex_name(Side side, int v) {
  return (side == Side::Men ? "m" : "w") + std::to_string(v + 1);
}

}  // namespace

bool Instance::has_edge(Edge e) const {
  if (e.man < 0 || e.man >= num_men() || e.woman < 0 || e.woman >= num_women()) return false;
  return man_rank_[e.man][e.woman] != 0;
}

int Instance::rank(Side side, int vertex, Edge e) const {
  if (!has_edge(e)) throw ValidationError("no such edge: " + edge_name(e));
  int incident = side == Side::Men ? e.man : e.woman;
  if (incident != vertex)
    throw ValidationError("edge " + edge_name(e) + " is not incident to " + vertex_name(side, vertex));
  return side == Side::Men ? man_rank_[e.man][e.woman] : woman_rank_[e.woman][e.man];
}

int Instance::num_groups(Side side, int vertex) const {
  return static_cast<int>(pref_list(side, vertex).size());
}

const PrefList& Instance::pref_list(Side side, int vertex) const {
  const auto& lists = side == Side::Men ? men_prefs_ : women_prefs_;
  if (vertex < 0 || vertex >= static_cast<int>(lists.size()))
    throw ValidationError("vertex out of range: " + vertex_name(side, vertex));
  return lists[vertex];
}

std::vector<int> Instance::neighbors(Side side, int vertex) const {
  std::vector<int> out;
  for (const auto& group : pref_list(side, vertex)) out.insert(out.end(), group.begin(), group.end());
  std::sort(out.begin(), out.end());
  return out;
}

int Instance::degree(Side side, int vertex) const {
  int d = 0;
  for (const auto& group : pref_list(side, vertex)) d += static_cast<int>(group.size());
  return d;
}

int Instance::max_degree() const {
  int best = 0;
  for (int u = 0; u < num_men(); ++u) best = std::max(best, degree(Side::Men, u));
  for (int w = 0; w < num_women(); ++w) best = std::max(best, degree(Side::Women, w));
  return best;
}

Instance build_instance(std::vector<PrefList> men_prefs, std::vector<PrefList> women_prefs) {
  Instance inst;
  int n_men = static_cast<int>(men_prefs.size());
  int n_women = static_cast<int>(women_prefs.size());

  auto check_side = [&](Side side, std::vector<PrefList>& lists, int other_count) {
    for (int v = 0; v < static_cast<int>(lists.size()); ++v) {
      std::set<int> seen;
      for (auto& group : lists[v]) {
        if (group.empty())
          throw ValidationError("empty tie group in list of " + vertex_name(side, v));
        for (int u : group) {
          if (u < 0 || u >= other_count)
            throw ValidationError("list of " + vertex_name(side, v) + " mentions out-of-range " +
                                  vertex_name(opposite(side), u));
          if (!seen.insert(u).second)
            throw ValidationError("list of " + vertex_name(side, v) + " repeats " +
                                  vertex_name(opposite(side), u));
        }
        std::sort(group.begin(), group.end());
      }
    }
  };
  check_side(Side::Men, men_prefs, n_women);
  check_side(Side::Women, women_prefs, n_men);

  inst.man_rank_.assign(n_men, std::vector<int>(n_women, 0));
  inst.woman_rank_.assign(n_women, std::vector<int>(n_men, 0));
  for (int u = 0; u < n_men; ++u)
    for (int g = 0; g < static_cast<int>(men_prefs[u].size()); ++g)
      for (int w : men_prefs[u][g]) inst.man_rank_[u][w] = g + 1;
  for (int w = 0; w < n_women; ++w)
    for (int g = 0; g < static_cast<int>(women_prefs[w].size()); ++g)
      for (int u : women_prefs[w][g]) inst.woman_rank_[w][u] = g + 1;

  for (int u = 0; u < n_men; ++u)
    for (int w = 0; w < n_women; ++w) {
      bool at_man = inst.man_rank_[u][w] != 0;
      bool at_woman = inst.woman_rank_[w][u] != 0;
      if (at_man != at_woman)
        throw ValidationError("edge " + edge_name({u, w}) + " is listed by " +
                              vertex_name(at_man ? Side::Men : Side::Women, at_man ? u : w) +
                              " but not reciprocated");
      if (at_man) inst.edges_.push_back({u, w});
    }

  inst.men_prefs_ = std::move(men_prefs);
  inst.women_prefs_ = std::move(women_prefs);
  return inst;
}

namespace {

bool edge_in(const std::vector<Edge>& set, Edge e) {
  return std::find(set.begin(), set.end(), e) != set.end();
}

}  // namespace

bool RestrictedEdgeSets::is_forbidden(Edge e) const { return edge_in(forbidden, e); }
bool RestrictedEdgeSets::is_forced(Edge e) const { return edge_in(forced, e); }
bool RestrictedEdgeSets::is_free(Edge e) const { return edge_in(free, e); }

void validate_restrictions(const Instance& inst, const RestrictedEdgeSets& r) {
  auto check_set = [&](const std::vector<Edge>& set, const std::string& name) {
    std::set<Edge> seen;
    for (Edge e : set) {
      if (!inst.has_edge(e))
        throw ValidationError(name + " edge " + edge_name(e) + " is not an acceptable pair");
      if (!seen.insert(e).second)
        throw ValidationError(name + " set repeats edge " + edge_name(e));
    }
  };
  check_set(r.forbidden, "forbidden");
  check_set(r.forced, "forced");
  check_set(r.free, "free");

  for (Edge e : r.forbidden) {
    if (edge_in(r.forced, e))
      throw ValidationError("edge " + edge_name(e) + " is both forbidden and forced");
    if (edge_in(r.free, e))
      throw ValidationError("edge " + edge_name(e) + " is both forbidden and free");
  }
  for (Edge e : r.forced)
    if (edge_in(r.free, e))
      throw ValidationError("edge " + edge_name(e) + " is both forced and free");

  std::set<int> men, women;
  for (Edge e : r.forced) {
    if (!men.insert(e.man).second)
      throw ValidationError("forced edges share man m" + std::to_string(e.man + 1));
    if (!women.insert(e.woman).second)
      throw ValidationError("forced edges share woman w" + std::to_string(e.woman + 1));
  }
}

Matching Matching::empty(const Instance& inst) {
  Matching m;
  m.man_to_.assign(inst.num_men(), -1);
  m.woman_to_.assign(inst.num_women(), -1);
  return m;
}

Matching Matching::from_edges(const Instance& inst, const std::vector<Edge>& edges) {
  Matching m = empty(inst);
  for (Edge e : edges) {
    if (!inst.has_edge(e))
      throw ValidationError("matching edge " + edge_name(e) + " is not an acceptable pair");
    if (m.man_to_[e.man] != -1)
      throw ValidationError("matching uses man m" + std::to_string(e.man + 1) + " twice");
    if (m.woman_to_[e.woman] != -1)
      throw ValidationError("matching uses woman w" + std::to_string(e.woman + 1) + " twice");
    m.man_to_[e.man] = e.woman;
    m.woman_to_[e.woman] = e.man;
    m.edges_.push_back(e);
  }
  std::sort(m.edges_.begin(), m.edges_.end());
  return m;
}

bool Matching::contains(Edge e) const {
  return e.man >= 0 && e.man < static_cast<int>(man_to_.size()) && man_to_[e.man] == e.woman;
}

std::optional<int> Matching::partner(Side side, int vertex) const {
  const auto& to = side == Side::Men ? man_to_ : woman_to_;
  if (vertex < 0 || vertex >= static_cast<int>(to.size()))
    throw ValidationError("vertex out of range: " + vertex_name(side, vertex));
  if (to[vertex] == -1) return std::nullopt;
  return to[vertex];
}

bool is_perfect(const Instance& inst, const Matching& m) {
  return 2 * m.size() == inst.num_men() + inst.num_women();
}

bool conforms_to_master_list(const Instance& inst, Side lists_side, const MasterList& master) {
  Side ranked = opposite(lists_side);
  if (master.over != ranked)
    throw ValidationError("master list ranks the wrong side for these preference lists");
  int count = inst.side_size(ranked);
  std::vector<int> master_rank(count, 0);
  for (int g = 0; g < static_cast<int>(master.groups.size()); ++g)
    for (int v : master.groups[g]) {
      if (v < 0 || v >= count)
        throw ValidationError("master list mentions out-of-range " + vertex_name(ranked, v));
      if (master_rank[v] != 0)
        throw ValidationError("master list repeats " + vertex_name(ranked, v));
      master_rank[v] = g + 1;
    }
  for (int v = 0; v < count; ++v)
    if (master_rank[v] == 0) throw ValidationError("master list misses " + vertex_name(ranked, v));

  for (int v = 0; v < inst.side_size(lists_side); ++v) {
    const PrefList& list = inst.pref_list(lists_side, v);
    for (size_t g = 0; g + 1 < list.size(); ++g)
      for (int a : list[g])
        for (int b : list[g + 1])
          if (master_rank[a] >= master_rank[b]) return false;
    // Within one tie group any arrangement is allowed, including entries the
    // master separates? No: a strict master order must not be collapsed.
    for (const auto& group : list)
      for (size_t i = 0; i + 1 < group.size(); ++i)
        for (size_t j = i + 1; j < group.size(); ++j)
          if (master_rank[group[i]] != master_rank[group[j]]) return false;
  }
  return true;
}

}  // namespace smtr
