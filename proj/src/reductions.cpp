#include "smtr/reductions.hpp"

#include <algorithm>
#include <random>

#include "smtr/oracle.hpp"
#include "smtr/stability.hpp"

namespace smtr {

const std::string& ReductionOutput::tag(Edge e) const {
  auto it = std::lower_bound(edge_tags.begin(), edge_tags.end(), e,
                             [](const auto& entry, Edge key) { return entry.first < key; });
  if (it == edge_tags.end() || it->first != e)
    throw ValidationError("no tag for edge " + edge_name(e));
  return it->second;
}

namespace {

void sort_tags(std::vector<std::pair<Edge, std::string>>& tags) {
  std::sort(tags.begin(), tags.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

Forbidden1Reduction reduce_perfect_to_forbidden1(const Instance& source) {
  Forbidden1Reduction red;
  red.source = source;
  int nu = source.num_men(), nw = source.num_women();
  red.u1 = nu;
  red.u2 = nu + 1;
  red.w1 = nw;
  red.w2 = nw + 1;

  std::vector<PrefList> men(nu + 2), women(nw + 2);
  std::vector<std::pair<Edge, std::string>> tags;

  for (int u = 0; u < nu; ++u) {
    PrefList& list = men[u];
    list = source.pref_list(Side::Men, u);                       // stage 0
    list.push_back({red.w1});                                    // stage 1
    for (int w = 0; w < nw; ++w)
      if (!source.has_edge(u, w)) list.push_back({w});           // stage 2
    list.push_back({red.w2});                                    // stage 3
  }
  {
    PrefList& list = men[red.u1];
    for (int w = 0; w < nw; ++w) list.push_back({w});            // stage 1
    list.push_back({red.w2});                                    // stage 3
    list.push_back({red.w1});                                    // stage 4
  }
  {
    PrefList& list = men[red.u2];
    for (int w = 0; w <= nw; ++w) list.push_back({w});           // stage 3
    list.push_back({red.w2});                                    // stage 4
  }
  for (int w = 0; w < nw; ++w) {
    PrefList& list = women[w];
    list = source.pref_list(Side::Women, w);
    list.push_back({red.u1});
    for (int u = 0; u < nu; ++u)
      if (!source.has_edge(u, w)) list.push_back({u});
    list.push_back({red.u2});
  }
  {
    PrefList& list = women[red.w1];
    for (int u = 0; u < nu; ++u) list.push_back({u});
    list.push_back({red.u2});
    list.push_back({red.u1});
  }
  {
    PrefList& list = women[red.w2];
    for (int u = 0; u <= nu; ++u) list.push_back({u});
    list.push_back({red.u2});
  }

  for (int u = 0; u < nu; ++u)
    for (int w = 0; w < nw; ++w)
      tags.push_back({{u, w}, source.has_edge(u, w) ? "0" : "2"});
  for (int u = 0; u < nu; ++u) {
    tags.push_back({{u, red.w1}, "1"});
    tags.push_back({{u, red.w2}, "3"});
  }
  for (int w = 0; w < nw; ++w) {
    tags.push_back({{red.u1, w}, "1"});
    tags.push_back({{red.u2, w}, "3"});
  }
  tags.push_back({{red.u1, red.w2}, "3"});
  tags.push_back({{red.u2, red.w1}, "3"});
  tags.push_back({{red.u1, red.w1}, "4"});
  tags.push_back({{red.u2, red.w2}, "4"});
  sort_tags(tags);

  red.out.instance = build_instance(std::move(men), std::move(women));
  red.out.restricted.forbidden = {red.forbidden_edge()};
  validate_restrictions(red.out.instance, red.out.restricted);
  for (int u = 0; u < nu; ++u) red.out.man_roles.push_back("src_m" + std::to_string(u + 1));
  red.out.man_roles.push_back("u1");
  red.out.man_roles.push_back("u2");
  for (int w = 0; w < nw; ++w) red.out.woman_roles.push_back("src_w" + std::to_string(w + 1));
  red.out.woman_roles.push_back("w1");
  red.out.woman_roles.push_back("w2");
  red.out.edge_tags = std::move(tags);
  return red;
}

Matching forbidden1_forward_witness(const Forbidden1Reduction& red, const Matching& source_matching) {
  if (!is_perfect(red.source, source_matching))
    throw ValidationError("source matching is not perfect");
  if (!blocking_report(red.source, source_matching).weakly_blocking().empty())
    throw ValidationError("source matching is not weakly stable");
  std::vector<Edge> edges = source_matching.edges();
  edges.push_back({red.u1, red.w2});
  edges.push_back({red.u2, red.w1});
  return Matching::from_edges(red.out.instance, edges);
}

Matching forbidden1_backward_witness(const Forbidden1Reduction& red, const Matching& constructed) {
  VerifyResult check =
      verify_stable(red.out.instance, red.out.restricted, constructed, StabilityLevel::Weak);
  if (!check.ok())
    throw ValidationError("constructed matching fails the weak verifier:\n" + check.describe());
  if (!constructed.contains({red.u1, red.w2}) || !constructed.contains({red.u2, red.w1}))
    throw std::logic_error("stable constructed matching misses a closing edge");
  std::vector<Edge> edges;
  for (Edge e : constructed.edges()) {
    if (e == Edge{red.u1, red.w2} || e == Edge{red.u2, red.w1}) continue;
    if (!red.source.has_edge(e))
      throw std::logic_error("stable constructed matching uses a non-source edge " + edge_name(e));
    edges.push_back(e);
  }
  Matching m = Matching::from_edges(red.source, edges);
  if (!is_perfect(red.source, m) || !blocking_report(red.source, m).weakly_blocking().empty())
    throw std::logic_error("recovered source matching is not perfect weakly stable");
  return m;
}

Instance reduce_forbidden1_to_dense(const Instance& inst, Edge forbidden) {
  if (inst.num_edges() != inst.num_men() * inst.num_women())
    throw ValidationError("instance is not complete bipartite");
  if (!inst.has_edge(forbidden))
    throw ValidationError("forbidden edge " + edge_name(forbidden) + " is not in the instance");
  if (inst.rank(Side::Men, forbidden.man, forbidden) != inst.num_groups(Side::Men, forbidden.man) ||
      inst.rank(Side::Women, forbidden.woman, forbidden) !=
          inst.num_groups(Side::Women, forbidden.woman))
    throw ValidationError("forbidden edge is not ranked last at both endpoints");

  std::vector<PrefList> men(inst.num_men()), women(inst.num_women());
  for (int u = 0; u < inst.num_men(); ++u)
    for (const auto& group : inst.pref_list(Side::Men, u)) {
      std::vector<int> kept;
      for (int w : group)
        if (Edge{u, w} != forbidden) kept.push_back(w);
      if (!kept.empty()) men[u].push_back(std::move(kept));
    }
  for (int w = 0; w < inst.num_women(); ++w)
    for (const auto& group : inst.pref_list(Side::Women, w)) {
      std::vector<int> kept;
      for (int u : group)
        if (Edge{u, w} != forbidden) kept.push_back(u);
      if (!kept.empty()) women[w].push_back(std::move(kept));
    }
  return build_instance(std::move(men), std::move(women));
}

Instance reduce_forbidden1_to_dense(const Forbidden1Reduction& red) {
  return reduce_forbidden1_to_dense(red.out.instance, red.forbidden_edge());
}

SatFreeReduction reduce_sat_to_ssmti_free(const SatFormula& f) {
  validate_formula(f);
  std::vector<std::vector<int>> where(f.num_vars);
  for (int c = 0; c < f.num_clauses(); ++c)
    for (int v : f.clauses[c]) where[v].push_back(c);
  for (int v = 0; v < f.num_vars; ++v)
    if (where[v].size() != 3)
      throw ValidationError("variable x" + std::to_string(v + 1) + " occurs " +
                            std::to_string(where[v].size()) + " times, the construction needs three");

  SatFreeReduction red;
  red.formula = f;
  red.n = f.num_vars;
  red.m = f.num_clauses();
  for (int v = 0; v < red.n; ++v) red.occ.push_back({where[v][0], where[v][1], where[v][2]});

  int n = red.n, m = red.m;
  std::vector<PrefList> men(6 * n + m), women(3 * n + 2 * m);
  std::vector<std::pair<Edge, std::string>> tags;
  RestrictedEdgeSets r;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) {
      men[red.z_man(i, j)] = {{red.y_woman(i, j)}};
      r.free.push_back({red.z_man(i, j), red.y_woman(i, j)});
      tags.push_back({{red.z_man(i, j), red.y_woman(i, j)}, "free"});

      PrefList& wl = men[red.w_man(i, j)];
      wl.push_back({red.y_woman(i, j)});
      std::vector<int> others;
      for (int o = 0; o < 3; ++o)
        if (o != j) others.push_back(red.y_woman(i, o));
      wl.push_back(others);
      wl.push_back({red.c_woman(red.occ[i][j])});
      tags.push_back({{red.w_man(i, j), red.c_woman(red.occ[i][j])}, "interconnecting"});
      for (int o = 0; o < 3; ++o)
        tags.push_back({{red.w_man(i, j), red.y_woman(i, o)}, "variable"});

      PrefList& yl = women[red.y_woman(i, j)];
      yl.push_back({red.z_man(i, j)});
      yl.push_back({red.w_man(i, 0), red.w_man(i, 1), red.w_man(i, 2)});
    }
  }
  for (int c = 0; c < m; ++c) {
    men[red.b_man(c)] = {{red.a_woman(c), red.c_woman(c)}};
    women[red.a_woman(c)] = {{red.b_man(c)}};
    PrefList& cl = women[red.c_woman(c)];
    std::vector<int> suitors;
    for (int v : f.clauses[c])
      for (int j = 0; j < 3; ++j)
        if (red.occ[v][j] == c) suitors.push_back(red.w_man(v, j));
    cl.push_back(suitors);
    cl.push_back({red.b_man(c)});
    tags.push_back({{red.b_man(c), red.a_woman(c)}, "clause"});
    tags.push_back({{red.b_man(c), red.c_woman(c)}, "clause"});
  }
  sort_tags(tags);

  red.out.instance = build_instance(std::move(men), std::move(women));
  red.out.restricted = std::move(r);
  validate_restrictions(red.out.instance, red.out.restricted);
  red.out.edge_tags = std::move(tags);

  red.out.man_roles.assign(6 * n + m, "");
  red.out.woman_roles.assign(3 * n + 2 * m, "");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 3; ++j) {
      std::string suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
      red.out.man_roles[red.z_man(i, j)] = "z_" + suffix;
      red.out.man_roles[red.w_man(i, j)] = "w_" + suffix;
      red.out.woman_roles[red.y_woman(i, j)] = "y_" + suffix;
    }
  for (int c = 0; c < m; ++c) {
    red.out.man_roles[red.b_man(c)] = "b_" + std::to_string(c + 1);
    red.out.woman_roles[red.c_woman(c)] = "c_" + std::to_string(c + 1);
    red.out.woman_roles[red.a_woman(c)] = "a_" + std::to_string(c + 1);
  }

  MasterList master;
  master.over = Side::Men;
  std::vector<int> zs, ws, bs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 3; ++j) {
      zs.push_back(red.z_man(i, j));
      ws.push_back(red.w_man(i, j));
    }
  for (int c = 0; c < m; ++c) bs.push_back(red.b_man(c));
  master.groups = {zs, ws, bs};
  red.out.master = std::move(master);
  return red;
}

Matching sat_forward_witness(const SatFreeReduction& red, const Assignment& a) {
  if (!satisfies_one_in_three(red.formula, a))
    throw ValidationError("assignment does not set exactly one variable per clause");
  std::vector<Edge> edges;
  for (int i = 0; i < red.n; ++i)
    for (int j = 0; j < 3; ++j) {
      if (a[i]) {
        edges.push_back({red.w_man(i, j), red.c_woman(red.occ[i][j])});
        edges.push_back({red.z_man(i, j), red.y_woman(i, j)});
      } else {
        edges.push_back({red.w_man(i, j), red.y_woman(i, j)});
      }
    }
  for (int c = 0; c < red.m; ++c) edges.push_back({red.b_man(c), red.a_woman(c)});
  return Matching::from_edges(red.out.instance, edges);
}

Assignment sat_backward_witness(const SatFreeReduction& red, const Matching& m) {
  VerifyResult check =
      verify_stable(red.out.instance, red.out.restricted, m, StabilityLevel::Strong);
  if (!check.ok())
    throw ValidationError("matching fails the strong verifier:\n" + check.describe());
  Assignment a(red.n);
  for (int i = 0; i < red.n; ++i) {
    int hits = 0;
    for (int j = 0; j < 3; ++j)
      if (m.contains({red.w_man(i, j), red.c_woman(red.occ[i][j])})) ++hits;
    if (hits != 0 && hits != 3)
      throw std::logic_error("stable matching holds " + std::to_string(hits) +
                             " of 3 interconnecting edges of variable x" + std::to_string(i + 1));
    a[i] = hits == 3;
  }
  if (!satisfies_one_in_three(red.formula, a))
    throw std::logic_error("recovered assignment is not exactly-one-in-three");
  return a;
}

std::pair<Instance, RestrictedEdgeSets> complete_with_free(const Instance& inst,
                                                           const RestrictedEdgeSets& r) {
  validate_restrictions(inst, r);
  std::vector<PrefList> men(inst.num_men()), women(inst.num_women());
  RestrictedEdgeSets out = r;
  for (int u = 0; u < inst.num_men(); ++u) {
    men[u] = inst.pref_list(Side::Men, u);
    std::vector<int> added;
    for (int w = 0; w < inst.num_women(); ++w)
      if (!inst.has_edge(u, w)) {
        added.push_back(w);
        out.free.push_back({u, w});
      }
    if (!added.empty()) men[u].push_back(std::move(added));
  }
  for (int w = 0; w < inst.num_women(); ++w) {
    women[w] = inst.pref_list(Side::Women, w);
    std::vector<int> added;
    for (int u = 0; u < inst.num_men(); ++u)
      if (!inst.has_edge(u, w)) added.push_back(u);
    if (!added.empty()) women[w].push_back(std::move(added));
  }
  std::sort(out.free.begin(), out.free.end());
  Instance completed = build_instance(std::move(men), std::move(women));
  validate_restrictions(completed, out);
  return {std::move(completed), std::move(out)};
}

namespace {

// mt19937_64 raw output is bit-exact across platforms; the bounding and the
// unit-interval conversion below keep it that way.
unsigned long bounded(std::mt19937_64& rng, unsigned long n) {
  return static_cast<unsigned long>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void shuffle_ints(std::vector<int>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

PrefList random_groups(std::vector<int> members, double tie_probability, std::mt19937_64& rng) {
  shuffle_ints(members, rng);
  PrefList groups;
  for (size_t i = 0; i < members.size(); ++i) {
    if (i == 0 || unit(rng) >= tie_probability)
      groups.push_back({members[i]});
    else
      groups.back().push_back(members[i]);
  }
  return groups;
}

}  // namespace

Instance gen_random_smti(int n_men, int n_women, double edge_density, double tie_probability,
                         unsigned long seed) {
  if (n_men < 1 || n_women < 1) throw ValidationError("both sides need at least one vertex");
  if (!(edge_density > 0.0 && edge_density <= 1.0))
    throw ValidationError("edge density must be in (0, 1]");
  if (!(tie_probability >= 0.0 && tie_probability <= 1.0))
    throw ValidationError("tie probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> man_nbrs(n_men), woman_nbrs(n_women);
  for (int u = 0; u < n_men; ++u)
    for (int w = 0; w < n_women; ++w)
      if (unit(rng) < edge_density) {
        man_nbrs[u].push_back(w);
        woman_nbrs[w].push_back(u);
      }
  std::vector<PrefList> men(n_men), women(n_women);
  for (int u = 0; u < n_men; ++u) men[u] = random_groups(man_nbrs[u], tie_probability, rng);
  for (int w = 0; w < n_women; ++w) women[w] = random_groups(woman_nbrs[w], tie_probability, rng);
  return build_instance(std::move(men), std::move(women));
}

SatFormula gen_random_1in3(int n, unsigned long seed) {
  if (n < 3) throw ValidationError("need at least three variables");
  std::mt19937_64 rng(seed);
  std::vector<int> pool;
  for (int v = 0; v < n; ++v) pool.insert(pool.end(), 3, v);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    shuffle_ints(pool, rng);
    SatFormula f;
    f.num_vars = n;
    bool ok = true;
    for (size_t at = 0; at < pool.size(); at += 3) {
      std::array<int, 3> clause = {pool[at], pool[at + 1], pool[at + 2]};
      std::sort(clause.begin(), clause.end());
      if (clause[0] == clause[1] || clause[1] == clause[2]) {
        ok = false;
        break;
      }
      f.clauses.push_back(clause);
    }
    if (!ok) continue;
    validate_formula(f);
    return f;
  }
  throw ValidationError("could not sample a formula without repeats in 1000 attempts");
}

}  // namespace smtr
