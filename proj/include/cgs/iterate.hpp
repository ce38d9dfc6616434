#pragma once

#include <cstddef>
#include <vector>

#include "cgs/convex_set.hpp"
#include "cgs/game.hpp"
#include "cgs/kleisli.hpp"
#include "cgs/play.hpp"

namespace cgs {

/// Default bound on generators produced by a single Kleisli step.
inline constexpr std::size_t kDefaultIterateCap = 4'000'000;

/// c_0(x), ..., c_n(x) where c_{k+1} = H̄^k(c) ⊙ c_k.
///
/// With `decorated` the iteration runs on c* and plays keep their state
/// history; otherwise it runs on c itself. Completed plays are carried along
/// by the unit, partial plays are extended by one move drawn from c(last state).
inline std::vector<ConvexSet<Play>> iterate_levels(const Coalgebra& c, bool decorated, StateId x, unsigned n,
                                                   std::size_t cap = kDefaultIterateCap) {
  (void)c.at(x);
  const Mode mode = c.mode;
  const auto cstar = decorated ? star(c) : std::vector<ConvexSet<DecoratedStep>>{};

  auto step = [&](const Play& t) -> ConvexSet<Play> {
    if (t.complete()) return kleisli_unit(mode, t);
    const StateId last = t.last_state();
    std::vector<Collection<Play>> gens;
    if (decorated) {
      for (const auto& u : cstar[last])
        gens.push_back(coll_map([&](const DecoratedStep& xh) { return extend(t, xh.second, true); }, u));
    } else {
      for (const auto& u : c.at(last))
        gens.push_back(coll_map([&](const HStep& h) { return extend(t, h, false); }, u));
    }
    return cl_convex(mode, std::move(gens));
  };

  std::vector<ConvexSet<Play>> levels;
  levels.reserve(n + 1);
  levels.push_back(kleisli_unit(mode, Play::start(x)));
  for (unsigned k = 0; k < n; ++k) levels.push_back(kleisli_extend(step, levels.back(), cap));
  return levels;
}

inline ConvexSet<Play> iterate(const Coalgebra& c, bool decorated, StateId x, unsigned n,
                               std::size_t cap = kDefaultIterateCap) {
  return iterate_levels(c, decorated, x, n, cap).back();
}

/// Truncation H^n_X(π_1) on decorated plays: keeps plays of length ≤ n and
/// cuts every longer play back to the partial play of length n it extends.
inline Play truncate(const Play& p, std::size_t n) {
  if (p.length() <= n) return p;
  if (p.states.size() != p.obs.size() + 1) throw Error("truncate needs a decorated play");
  Play q;
  q.obs.assign(p.obs.begin(), p.obs.begin() + static_cast<std::ptrdiff_t>(n));
  q.states.assign(p.states.begin(), p.states.begin() + static_cast<std::ptrdiff_t>(n + 1));
  return q;
}

}  // namespace cgs
