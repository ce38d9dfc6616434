#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cgs/convex_set.hpp"
#include "cgs/game.hpp"
#include "cgs/iterate.hpp"
#include "cgs/play.hpp"
#include "cgs/semantics.hpp"
#include "cgs/strategy.hpp"

namespace cgs {

/// Outcome of comparing a semantic side (lhs) with a strategy side (rhs).
template <class E>
struct Report {
  bool equal = false;
  ConvexSet<E> lhs;
  ConvexSet<E> rhs;
  std::optional<Collection<E>> witness;  // in one side but not the other
  bool witness_in_lhs = false;
  std::size_t strategy_outcomes = 0;
};

namespace detail {

template <class E>
Report<E> compare(ConvexSet<E> lhs, ConvexSet<E> rhs, std::size_t outcomes) {
  Report<E> r{false, std::move(lhs), std::move(rhs), std::nullopt, false, outcomes};
  if (const auto* w = non_member_witness(r.lhs, r.rhs)) {
    r.witness = *w;
    r.witness_in_lhs = true;
  } else if (const auto* w2 = non_member_witness(r.rhs, r.lhs)) {
    r.witness = *w2;
  } else {
    r.equal = true;
  }
  return r;
}

}  // namespace detail

/// Unfolding c* n times at x versus the closure of the n-step partial outcomes
/// of all n-step strategies.
inline Report<Play> verify_lemma_main(const Coalgebra& c, StateId x, unsigned n,
                                      std::size_t cap = kDefaultOutcomeCap) {
  auto outcomes = strategy_outcomes(c, x, n, cap);
  const auto count = outcomes.size();
  return detail::compare(iterate(c, true, x, n), cl_convex(c.mode, std::move(outcomes)), count);
}

/// Depth-n execution approximant versus the union of depth-n projected
/// completed outcomes of all strategies.
inline Report<Play> verify_theorem_main(const Coalgebra& c, StateId x, unsigned n,
                                        std::size_t cap = kDefaultOutcomeCap) {
  auto outcomes = strategy_outcomes(c, x, n, cap);
  const auto count = outcomes.size();
  // A strategy tabulated to depth n whose outcome is complete has completed
  // within n steps, so its completed outcome is cl{outcome}; otherwise ∅.
  std::vector<ConvexSet<Play>> completed;
  for (const auto& u : outcomes)
    if (u.all_of([](const Play& p) { return p.complete(); })) completed.push_back(project_depth(cl_single(u), n));
  auto rhs = join_convex<Play>(completed, c.mode);
  return detail::compare(project_depth(exec_approx(c, x, n), n), std::move(rhs), count);
}

struct TraceReport {
  Report<Trace> strategies;  // forget_states on both sides of the execution comparison
  bool matches_trace_map = false;  // lhs also equals the directly iterated trace approximant
  ConvexSet<Trace> trace_map;

  bool equal() const { return strategies.equal && matches_trace_map; }
};

inline TraceReport verify_traces_via_strategies(const Coalgebra& c, StateId x, unsigned n,
                                                std::size_t cap = kDefaultOutcomeCap) {
  auto exec = verify_theorem_main(c, x, n, cap);
  TraceReport out{detail::compare(forget_states(exec.lhs), forget_states(exec.rhs), exec.strategy_outcomes), false,
                  trace_approx(c, x, n)};
  out.matches_trace_map = convex_equal(out.strategies.lhs, out.trace_map);
  return out;
}

}  // namespace cgs
