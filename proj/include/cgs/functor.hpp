#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"

namespace cgs {

using ObsId = std::uint32_t;
using StateId = std::uint32_t;

/// One element of the linear functor H(Y) = B + A × Y:
/// Stop(b) when `next` is empty, Go(a, y) otherwise. `obs` is b or a.
template <class Y>
struct H {
  ObsId obs = 0;
  std::optional<Y> next;

  static H stop(ObsId b) { return H{b, std::nullopt}; }
  static H go(ObsId a, Y y) { return H{a, std::move(y)}; }

  bool is_stop() const { return !next.has_value(); }

  friend bool operator==(const H&, const H&) = default;
  friend auto operator<=>(const H&, const H&) = default;
};

/// A one-step move of the game: Stop(b) | Go(a, x).
using HStep = H<StateId>;

/// Distributive law λ : H T → T H of a linear functor over any Set monad:
///   Stop(b) ↦ η^T(Stop(b)),  Go(a, u) ↦ T(x ↦ Go(a, x))(u).
template <class X>
Collection<H<X>> lambda_h(Mode mode, const H<Collection<X>>& step) {
  if (step.is_stop()) return coll_unit(mode, H<X>::stop(step.obs));
  if (step.next->mode() != mode) throw ModeMismatch("lambda_h: mode mismatch");
  const ObsId a = step.obs;
  return coll_map([a](const X& x) { return H<X>::go(a, x); }, *step.next);
}

/// Kleisli extension H̄(f) of f : X → P̃T(Y), obtained from λ generator-wise.
template <class F>
auto h_extend(Mode mode, F f) {
  return [mode, f = std::move(f)](const auto& h) {
    using X = typename std::decay_t<decltype(h.next)>::value_type;
    using Y = typename std::decay_t<std::invoke_result_t<F&, const X&>>::Coll::value_type;
    if (h.is_stop()) return cl_single(lambda_h<Y>(mode, H<Collection<Y>>::stop(h.obs)));
    auto image = f(*h.next);
    std::vector<Collection<H<Y>>> gens;
    gens.reserve(image.size());
    for (const auto& u : image) gens.push_back(lambda_h(mode, H<Collection<Y>>::go(h.obs, u)));
    return cl_convex(mode, std::move(gens));
  };
}

}  // namespace cgs
