#pragma once

#include <optional>

#include "smtr/instance.hpp"
#include "smtr/stability.hpp"

namespace smtr {

// Weakly stable matching via deterministic tie-breaking (ascending vertex id
// inside every tie group) followed by man-proposing deferred acceptance.
// Always succeeds.
Matching solve_weak(const Instance& inst);

// Free edges only widen what counts as stable, so a fully weakly stable
// matching qualifies unchanged. The free set is validated, then ignored.
Matching solve_weak_with_free(const Instance& inst, const std::vector<Edge>& free_edges);

// Exact search for a super/strongly stable matching avoiding `r.forbidden`
// and containing `r.forced`. Requires r.free to be empty. Returns nullopt
// iff no such matching exists.
std::optional<Matching> solve_super(const Instance& inst, const RestrictedEdgeSets& r);
std::optional<Matching> solve_strong(const Instance& inst, const RestrictedEdgeSets& r);

struct FptOutcome {
  std::optional<Matching> matching;
  long long subproblem_calls = 0;
};

// Free-edge solver, exponential only in k = |r.free|: for each subset S of
// the free edges (ascending bitmask over the sorted free list), force S,
// delete the other free edges, and solve at `level`; first witness wins.
// Performs exactly 2^k subproblem calls when returning no matching.
// By default requires r.forbidden and r.forced to be empty;
// `allow_forced_forbidden` lets them pass through into every subproblem.
FptOutcome solve_free_fpt(const Instance& inst, const RestrictedEdgeSets& r, StabilityLevel level,
                          bool allow_forced_forbidden = false);

}  // namespace smtr
