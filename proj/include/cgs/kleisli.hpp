#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/distributive_law.hpp"

namespace cgs {

// ---------------------------------------------------------------------------
// Kleisli structure of the environment monad T.

/// Kleisli extension g^$ = μ^T ∘ T(g).
template <class E, class G>
auto kleisli_extend_T(G&& g, const Collection<E>& u) {
  using R = std::decay_t<std::invoke_result_t<G&, const E&>>;
  std::vector<std::pair<R, Rational>> parts;
  parts.reserve(u.size());
  for (const auto& [e, w] : u) parts.emplace_back(g(e), w);
  std::vector<typename Collection<R>::Entry> outer(parts.begin(), parts.end());
  // Inner collections can coincide; of_dist/of_set merge them consistently.
  auto uu = u.mode() == Mode::prob ? Collection<R>::of_dist(std::move(outer)) : [&] {
    std::vector<R> elems;
    for (auto& [r, w] : parts) elems.push_back(std::move(r));
    return Collection<R>::of_set(u.mode(), std::move(elems));
  }();
  return coll_mult(uu);
}

/// g ⊙ f := μ^T ∘ T(g) ∘ f.
template <class G, class F>
auto kleisli_compose_T(G g, F f) {
  return [g = std::move(g), f = std::move(f)](const auto& x) { return kleisli_extend_T(g, f(x)); };
}

// ---------------------------------------------------------------------------
// Kleisli structure of the composite monad P̃T.

inline constexpr std::size_t kUnboundedGenerators = std::numeric_limits<std::size_t>::max();

/// Kleisli extension of g : E → P̃T(Z) applied to a convex set U:
///   μ^P μ^T ∘ P δ ∘ P T(g) (U), followed by convex closure.
///
/// Works on generators: for each generator u of U, every support element y
/// picks one generator of g(y), and the picks are multiplied with μ^T. Because
/// each g(y) is convex, finite unions (or mixtures) of picks lie in the closure,
/// so single picks generate the same convex set as the full law. `cap` bounds
/// the number of generators produced before canonicalisation.
template <class E, class G>
auto kleisli_extend(G&& g, const ConvexSet<E>& U, std::size_t cap = kUnboundedGenerators) {
  using Set = std::decay_t<std::invoke_result_t<G&, const E&>>;
  using Z = typename Set::Coll::value_type;
  const Mode mode = U.mode();

  std::map<E, Set> images;
  auto image = [&](const E& y) -> const Set& {
    auto it = images.find(y);
    if (it == images.end()) {
      it = images.emplace(y, g(y)).first;
      if (it->second.mode() != mode) throw ModeMismatch("kleisli_extend: g changes mode");
    }
    return it->second;
  };

  std::vector<Collection<Z>> out;
  for (const auto& u : U) {
    std::vector<const Set*> sets;
    std::vector<Rational> weights;
    std::vector<std::size_t> sizes;
    for (const auto& [y, p] : u) {
      sets.push_back(&image(y));
      weights.push_back(p);
      sizes.push_back(sets.back()->size());
    }
    for_each_selection(sizes, [&](const std::vector<std::size_t>& idx) {
      if (out.size() >= cap) throw EnumerationCapExceeded("kleisli_extend generator count", cap);
      if (mode == Mode::prob) {
        std::vector<std::pair<const Collection<Z>*, Rational>> parts;
        parts.reserve(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) parts.emplace_back(&sets[i]->generators()[idx[i]], weights[i]);
        out.push_back(coll_mix(parts));
      } else {
        std::vector<Z> elems;
        for (std::size_t i = 0; i < idx.size(); ++i)
          for (const auto& [z, w] : sets[i]->generators()[idx[i]]) elems.push_back(z);
        out.push_back(Collection<Z>::of_set(mode, std::move(elems)));
      }
    });
  }
  return cl_convex(mode, std::move(out));
}

/// g ⊙ f := μ^P μ^T ∘ P δ ∘ P T(g) ∘ f, pointwise.
template <class G, class F>
auto kleisli_compose(G g, F f) {
  return [g = std::move(g), f = std::move(f)](const auto& x) { return kleisli_extend(g, f(x)); };
}

/// Unit of the composite monad: x ↦ cl{η^T(x)}.
template <class E>
ConvexSet<E> kleisli_unit(Mode mode, E x) {
  return cl_single(coll_unit(mode, std::move(x)));
}

/// The functor K : Kl(T) → Kl(P̃T), f ↦ cl ∘ η^P ∘ f.
template <class F>
auto lift_K(F f) {
  return [f = std::move(f)](const auto& x) { return cl_single(f(x)); };
}

/// Left strength x, u ↦ T(h ↦ (x, h))(u).
template <class X, class E>
Collection<std::pair<X, E>> strength_pair(const X& x, const Collection<E>& u) {
  return coll_map([&](const E& h) { return std::pair<X, E>(x, h); }, u);
}

}  // namespace cgs
