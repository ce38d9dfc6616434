#pragma once

#include <cstddef>
#include <vector>

#include "cgs/convex_set.hpp"
#include "cgs/game.hpp"
#include "cgs/iterate.hpp"
#include "cgs/play.hpp"

namespace cgs {

/// Composition with H̄^n(!): keeps exactly the collections whose plays are all complete.
inline ConvexSet<Play> filter_complete(const ConvexSet<Play>& u) {
  return convex_filter(u, [](const Collection<Play>& g) { return g.all_of([](const Play& p) { return p.complete(); }); });
}

/// Composition with π_n: keeps collections whose plays are complete with length ≤ n.
inline ConvexSet<Play> project_depth(const ConvexSet<Play>& u, std::size_t n) {
  return convex_filter(u, [n](const Collection<Play>& g) {
    return g.all_of([n](const Play& p) { return p.complete() && p.length() <= n; });
  });
}

/// Elementwise state-forgetting projection, re-canonicalised (sets merge, weights add).
inline ConvexSet<Trace> forget_states(const ConvexSet<Play>& u) {
  return convex_map([](const Play& p) { return to_trace(p); }, u);
}

/// Approximant of the execution map at depth n: ⋁_{m ≤ n} H̄^m(!) ⊙ c*_m(x).
inline ConvexSet<Play> exec_approx(const Coalgebra& c, StateId x, unsigned n) {
  auto levels = iterate_levels(c, true, x, n);
  std::vector<ConvexSet<Play>> parts;
  for (const auto& level : levels) parts.push_back(filter_complete(level));
  return join_convex<Play>(parts, c.mode);
}

/// Approximant of the trace map at depth n: ⋁_{m ≤ n} κ_m ∘ H̄^m(!) ⊙ c_m(x).
inline ConvexSet<Trace> trace_approx(const Coalgebra& c, StateId x, unsigned n) {
  auto levels = iterate_levels(c, false, x, n);
  std::vector<ConvexSet<Play>> parts;
  for (const auto& level : levels) parts.push_back(filter_complete(level));
  return forget_states(join_convex<Play>(parts, c.mode));
}

/// True when no generator of c_n(x) holds a partial play. Every strategy has
/// then completed within n steps, so deeper approximants add nothing. Sound
/// but incomplete: cyclic games where only some strategies complete never certify.
inline bool stabilization_check(const Coalgebra& c, StateId x, unsigned n) {
  auto top = iterate(c, false, x, n);
  for (const auto& g : top)
    if (!g.all_of([](const Play& p) { return p.complete(); })) return false;
  return true;
}

template <class E>
struct Approximant {
  ConvexSet<E> value;
  bool stabilized = false;
};

inline Approximant<Trace> traces(const Coalgebra& c, StateId x, unsigned n) {
  return {trace_approx(c, x, n), stabilization_check(c, x, n)};
}

inline Approximant<Play> executions(const Coalgebra& c, StateId x, unsigned n) {
  return {exec_approx(c, x, n), stabilization_check(c, x, n)};
}

}  // namespace cgs
