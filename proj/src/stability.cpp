#include "smtr/stability.hpp"

#include <algorithm>

namespace smtr {

std::string level_name(StabilityLevel level) {
  switch (level) {
    case StabilityLevel::Weak: return "weak";
    case StabilityLevel::Strong: return "strong";
    case StabilityLevel::Super: return "super";
  }
  return "?";
}

bool BlockingFlags::at(StabilityLevel level) const {
  switch (level) {
    case StabilityLevel::Weak: return weak;
    case StabilityLevel::Strong: return strong;
    case StabilityLevel::Super: return super;
  }
  return false;
}

Relation relation_at(const Instance& inst, const Matching& m, Side side, int vertex, Edge e) {
  int e_rank = inst.rank(side, vertex, e);  // also checks incidence
  auto partner = m.partner(side, vertex);
  if (!partner) return Relation::StrictlyBetter;
  Edge current = side == Side::Men ? Edge{vertex, *partner} : Edge{*partner, vertex};
  int cur_rank = inst.rank(side, vertex, current);
  if (e_rank < cur_rank) return Relation::StrictlyBetter;
  if (e_rank == cur_rank) return Relation::Equal;
  return Relation::StrictlyWorse;
}

BlockingFlags classify_edge(const Instance& inst, const Matching& m, Edge e) {
  if (m.contains(e))
    throw ValidationError("edge " + edge_name(e) + " is in the matching, blocking is undefined");
  Relation at_man = relation_at(inst, m, Side::Men, e.man, e);
  Relation at_woman = relation_at(inst, m, Side::Women, e.woman, e);
  bool man_better = at_man == Relation::StrictlyBetter;
  bool woman_better = at_woman == Relation::StrictlyBetter;
  bool man_ok = at_man != Relation::StrictlyWorse;
  bool woman_ok = at_woman != Relation::StrictlyWorse;
  BlockingFlags f;
  f.weak = man_better && woman_better;
  f.strong = (man_better && woman_ok) || (woman_better && man_ok);
  f.super = man_ok && woman_ok;
  return f;
}

BlockingReport::BlockingReport(const Instance& inst, const Matching& m) {
  for (Edge e : inst.edges()) {
    if (m.contains(e)) continue;
    BlockingFlags f = classify_edge(inst, m, e);
    if (f.weak) weak_.push_back(e);
    if (f.strong) strong_.push_back(e);
    if (f.super) super_.push_back(e);
  }
}

const std::vector<Edge>& BlockingReport::blocking(StabilityLevel level) const {
  switch (level) {
    case StabilityLevel::Weak: return weak_;
    case StabilityLevel::Strong: return strong_;
    case StabilityLevel::Super: return super_;
  }
  return super_;
}

std::string VerifyResult::describe() const {
  std::string out;
  for (Edge e : forbidden_in_matching)
    out += "forbidden edge " + edge_name(e) + " is in the matching\n";
  for (Edge e : forced_missing) out += "forced edge " + edge_name(e) + " is missing\n";
  for (Edge e : blocking_not_free) out += "edge " + edge_name(e) + " blocks and is not free\n";
  return out;
}

VerifyResult verify_stable(const Instance& inst, const RestrictedEdgeSets& r, const Matching& m,
                           StabilityLevel level) {
  VerifyResult result;
  for (Edge e : r.forbidden)
    if (m.contains(e)) result.forbidden_in_matching.push_back(e);
  for (Edge e : r.forced)
    if (!m.contains(e)) result.forced_missing.push_back(e);
  BlockingReport report = blocking_report(inst, m);
  for (Edge e : report.blocking(level))
    if (!r.is_free(e)) result.blocking_not_free.push_back(e);
  std::sort(result.forbidden_in_matching.begin(), result.forbidden_in_matching.end());
  std::sort(result.forced_missing.begin(), result.forced_missing.end());
  return result;
}

}  // namespace smtr
