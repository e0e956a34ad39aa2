#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smtr {

// Raised when input data breaks a documented invariant (bad preference lists,
// overlapping edge sets, a matching that reuses a vertex, ...). The message
// names the offending vertex or edge in 1-based man/woman notation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { Men, Women };

constexpr Side opposite(Side s) { return s == Side::Men ? Side::Women : Side::Men; }

// An acceptable man-woman pair. Indices are 0-based and per side.
struct Edge {
  int man = -1;
  int woman = -1;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

std::string edge_name(Edge e);  // "m3-w5", 1-based, for messages

// One vertex's preference list as tie groups over opposite-side indices,
// most preferred group first. Canonical form: members of each group sorted
// ascending, no empty groups, no repeated vertex across groups.
using PrefList = std::vector<std::vector<int>>;

// A bipartite preference system with ties, possibly incomplete.
class Instance {
 public:
  Instance() = default;

  int num_men() const { return static_cast<int>(men_prefs_.size()); }
  int num_women() const { return static_cast<int>(women_prefs_.size()); }
  int side_size(Side s) const { return s == Side::Men ? num_men() : num_women(); }

  // All acceptable pairs, sorted ascending by (man, woman).
  const std::vector<Edge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool has_edge(Edge e) const;
  bool has_edge(int man, int woman) const { return has_edge(Edge{man, woman}); }

  // Rank of an incident edge at one endpoint, 1 = most preferred; ties share
  // a rank. The edge must be acceptable.
  int rank(Side side, int vertex, Edge e) const;
  int man_rank(int man, int woman) const { return rank(Side::Men, man, {man, woman}); }
  int woman_rank(int woman, int man) const { return rank(Side::Women, woman, {man, woman}); }

  // Number of tie groups in the vertex's list (= its worst rank, 0 if isolated).
  int num_groups(Side side, int vertex) const;

  const PrefList& pref_list(Side side, int vertex) const;
  // Incident opposite-side vertices, ascending.
  std::vector<int> neighbors(Side side, int vertex) const;
  int degree(Side side, int vertex) const;
  int max_degree() const;

 private:
  friend Instance build_instance(std::vector<PrefList>, std::vector<PrefList>);
  std::vector<PrefList> men_prefs_, women_prefs_;
  std::vector<Edge> edges_;
  // Dense rank tables, 0 where the pair is unacceptable.
  std::vector<std::vector<int>> man_rank_, woman_rank_;
};

// Builds an instance from raw per-vertex tie groups. Validates ranges,
// rejects duplicates within a list and non-reciprocal mentions, and sorts
// each group's members into canonical form. Group order is preserved.
Instance build_instance(std::vector<PrefList> men_prefs, std::vector<PrefList> women_prefs);

// Restriction sets over the instance's edges: forbidden edges may not be
// used, forced edges must be used, free edges cannot block.
struct RestrictedEdgeSets {
  std::vector<Edge> forbidden;
  std::vector<Edge> forced;
  std::vector<Edge> free;

  bool is_forbidden(Edge e) const;
  bool is_forced(Edge e) const;
  bool is_free(Edge e) const;
};

// Checks that all three sets reference acceptable edges, are pairwise
// disjoint, and that the forced edges form a matching. Throws ValidationError.
void validate_restrictions(const Instance& inst, const RestrictedEdgeSets& r);

// A matching of an instance: a set of acceptable edges, no shared vertices.
class Matching {
 public:
  Matching() = default;
  static Matching empty(const Instance& inst);
  // Validates edges against the instance; throws ValidationError.
  static Matching from_edges(const Instance& inst, const std::vector<Edge>& edges);

  // Sorted ascending by (man, woman).
  const std::vector<Edge>& edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool contains(Edge e) const;
  bool is_matched(Side side, int vertex) const { return partner(side, vertex).has_value(); }
  std::optional<int> partner(Side side, int vertex) const;

  friend bool operator==(const Matching& a, const Matching& b) { return a.edges_ == b.edges_; }

 private:
  std::vector<Edge> edges_;
  std::vector<int> man_to_, woman_to_;  // -1 = unmatched
};

bool is_perfect(const Instance& inst, const Matching& m);

// A strict-order-with-ties over one side's vertices that every list on the
// other side must follow.
struct MasterList {
  Side over;                             // which side's vertices the groups rank
  std::vector<std::vector<int>> groups;  // best first
};

// True when every preference list of side `lists_side` orders its entries
// consistently with `master` (entries in the same master group may appear in
// any tie arrangement; entries in different groups must be strictly ordered
// the master's way). Throws ValidationError if `master` does not cover side
// `opposite(lists_side)` with disjoint in-range groups.
bool conforms_to_master_list(const Instance& inst, Side lists_side, const MasterList& master);

}  // namespace smtr
