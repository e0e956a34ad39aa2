#pragma once

#include <string>
#include <vector>

#include "smtr/instance.hpp"

namespace smtr {

enum class StabilityLevel { Weak, Strong, Super };

std::string level_name(StabilityLevel level);

// How `vertex` compares an incident non-matching option against its current
// situation. Unmatched vertices see every incident edge as StrictlyBetter.
enum class Relation { StrictlyBetter, Equal, StrictlyWorse };

Relation relation_at(const Instance& inst, const Matching& m, Side side, int vertex, Edge e);

struct BlockingFlags {
  bool weak = false;
  bool strong = false;
  bool super = false;
  bool at(StabilityLevel level) const;
};

// Blocking classification of a non-matching edge:
//   weak   - both endpoints strictly prefer e,
//   strong - one endpoint strictly prefers e, the other finds it no worse,
//   super  - both endpoints find it no worse.
// Throws ValidationError when e is in m (blocking is undefined there).
BlockingFlags classify_edge(const Instance& inst, const Matching& m, Edge e);

// Per-level blocking edge sets of a matching, each sorted ascending.
class BlockingReport {
 public:
  BlockingReport(const Instance& inst, const Matching& m);
  const std::vector<Edge>& weakly_blocking() const { return weak_; }
  const std::vector<Edge>& strongly_blocking() const { return strong_; }
  const std::vector<Edge>& super_blocking() const { return super_; }
  const std::vector<Edge>& blocking(StabilityLevel level) const;

 private:
  std::vector<Edge> weak_, strong_, super_;
};

inline BlockingReport blocking_report(const Instance& inst, const Matching& m) {
  return BlockingReport(inst, m);
}

// Outcome of a stability check: ok() iff all three violation lists are empty.
struct VerifyResult {
  std::vector<Edge> forbidden_in_matching;  // M ∩ P
  std::vector<Edge> forced_missing;         // Q \ M
  std::vector<Edge> blocking_not_free;      // blocking edges outside F

  bool ok() const {
    return forbidden_in_matching.empty() && forced_missing.empty() && blocking_not_free.empty();
  }
  std::string describe() const;  // one line per violation, empty string when ok
};

// The stability test with restricted edges: M avoids P, contains Q, and every
// edge blocking at `level` is free.
VerifyResult verify_stable(const Instance& inst, const RestrictedEdgeSets& r, const Matching& m,
                           StabilityLevel level);

}  // namespace smtr
