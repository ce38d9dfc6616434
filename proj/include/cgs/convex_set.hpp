#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/error.hpp"
#include "cgs/feasibility.hpp"

namespace cgs {

/// A convex set of collections, held by a finite set of generators.
///
/// Set-like modes keep the union-irreducible antichain of the closure, which is
/// unique, so equal sets have identical generators. Probabilistic mode keeps a
/// deduplicated generator list whose convex hull is the set; membership is an
/// exact linear feasibility question. An empty generator list is the empty set
/// (controller deadlock).
template <class E>
class ConvexSet {
 public:
  using Coll = Collection<E>;

  explicit ConvexSet(Mode mode = Mode::nondet) : mode_(mode) {}

  Mode mode() const { return mode_; }
  const std::vector<Coll>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }

  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  /// Generator-level equality. Exact set equality in set-like modes; use
  /// convex_equal for probabilistic hulls.
  friend bool operator==(const ConvexSet&, const ConvexSet&) = default;

  template <class F>
  friend ConvexSet<F> cl_convex(Mode mode, std::vector<Collection<F>> gens);

 private:
  Mode mode_;
  std::vector<Coll> gens_;
};

namespace detail {

// Drops every generator that is the union of strictly smaller generators.
template <class E>
std::vector<Collection<E>> union_irreducible(std::vector<Collection<E>> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<bool> keep(gens.size(), true);
  std::vector<bool> covered;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.empty()) continue;
    covered.assign(g.size(), false);
    std::size_t count = 0;
    for (std::size_t j = 0; j < i && count < g.size(); ++j) {
      const auto& h = gens[j];
      if (h.size() >= g.size() || !support_subset(h, g)) continue;
      auto it = g.begin();
      for (const auto& en : h) {
        while (!(it->first == en.first)) ++it;
        auto idx = static_cast<std::size_t>(it - g.begin());
        if (!covered[idx]) { covered[idx] = true; ++count; }
      }
    }
    if (count == g.size()) keep[i] = false;
  }
  std::vector<Collection<E>> out;
  out.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (keep[i]) out.push_back(std::move(gens[i]));
  std::sort(out.begin(), out.end());
  return out;
}

template <class E>
bool union_member(const Collection<E>& u, const std::vector<Collection<E>>& gens) {
  std::vector<bool> covered(u.size(), false);
  std::size_t count = 0;
  bool any = false;
  for (const auto& g : gens) {
    if (g.size() > u.size() || !support_subset(g, u)) continue;
    any = true;
    auto it = u.begin();
    for (const auto& en : g) {
      while (!(it->first == en.first)) ++it;
      auto idx = static_cast<std::size_t>(it - u.begin());
      if (!covered[idx]) { covered[idx] = true; ++count; }
    }
  }
  return any && count == u.size();
}

template <class E>
bool hull_member(const Collection<E>& u, const std::vector<Collection<E>>& gens) {
  std::vector<const Collection<E>*> usable;
  for (const auto& g : gens) {
    if (g == u) return true;
    if (g.size() <= u.size() && support_subset(g, u)) usable.push_back(&g);
  }
  if (usable.empty()) return false;
  // Rows: one per support point of u, plus Σλ = 1.
  std::vector<std::vector<Rational>> columns;
  columns.reserve(usable.size());
  for (const auto* g : usable) {
    std::vector<Rational> col(u.size() + 1);
    auto it = u.begin();
    for (const auto& [e, w] : *g) {
      while (!(it->first == e)) ++it;
      col[static_cast<std::size_t>(it - u.begin())] = w;
    }
    col[u.size()] = Rational(1);
    columns.push_back(std::move(col));
  }
  std::vector<Rational> target;
  target.reserve(u.size() + 1);
  for (const auto& [e, w] : u) target.push_back(w);
  target.push_back(Rational(1));
  return lp::nonnegative_solution(columns, target).has_value();
}

}  // namespace detail

/// Convex closure: union-closure for set-like modes, convex hull for distributions.
template <class E>
ConvexSet<E> cl_convex(Mode mode, std::vector<Collection<E>> gens) {
  for (const auto& g : gens)
    if (g.mode() != mode) throw ModeMismatch("cl_convex over collections of a different mode");
  ConvexSet<E> out(mode);
  if (is_set_like(mode)) {
    out.gens_ = detail::union_irreducible(std::move(gens));
  } else {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    out.gens_ = std::move(gens);
  }
  return out;
}

template <class E>
ConvexSet<E> cl_convex(Mode mode, const std::set<Collection<E>>& gens) {
  return cl_convex(mode, std::vector<Collection<E>>(gens.begin(), gens.end()));
}

/// Singleton closure cl{u}.
template <class E>
ConvexSet<E> cl_single(Collection<E> u) {
  Mode m = u.mode();
  std::vector<Collection<E>> gens;
  gens.push_back(std::move(u));
  return cl_convex(m, std::move(gens));
}

template <class E>
bool convex_member(const Collection<E>& u, const ConvexSet<E>& s) {
  if (u.mode() != s.mode()) throw ModeMismatch("convex_member: collection and set differ in mode");
  if (s.empty()) return false;
  if (is_set_like(s.mode())) return detail::union_member(u, s.generators());
  return detail::hull_member(u, s.generators());
}

/// s1 ⊑ s2: every element of s1 belongs to s2.
template <class E>
bool convex_includes(const ConvexSet<E>& s1, const ConvexSet<E>& s2) {
  if (s1.mode() != s2.mode()) throw ModeMismatch("convex_includes: mode mismatch");
  return std::all_of(s1.begin(), s1.end(), [&](const auto& g) { return convex_member(g, s2); });
}

template <class E>
bool convex_equal(const ConvexSet<E>& s1, const ConvexSet<E>& s2) {
  if (s1.mode() != s2.mode()) throw ModeMismatch("convex_equal: mode mismatch");
  if (s1.generators() == s2.generators()) return true;
  return convex_includes(s1, s2) && convex_includes(s2, s1);
}

/// First generator of `a` that is not a member of `b`, if any.
template <class E>
const Collection<E>* non_member_witness(const ConvexSet<E>& a, const ConvexSet<E>& b) {
  for (const auto& g : a)
    if (!convex_member(g, b)) return &g;
  return nullptr;
}

/// Binary and n-ary joins cl ∘ ⋃.
template <class E>
ConvexSet<E> join_convex(std::span<const ConvexSet<E>> sets, Mode mode) {
  std::vector<Collection<E>> gens;
  for (const auto& s : sets) {
    if (s.mode() != mode) throw ModeMismatch("join_convex over mixed modes");
    gens.insert(gens.end(), s.begin(), s.end());
  }
  return cl_convex(mode, std::move(gens));
}

template <class E>
ConvexSet<E> join_convex(const ConvexSet<E>& a, const ConvexSet<E>& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("join_convex over mixed modes");
  std::vector<Collection<E>> gens(a.begin(), a.end());
  gens.insert(gens.end(), b.begin(), b.end());
  return cl_convex(a.mode(), std::move(gens));
}

/// Functor action P̃T(f), generator-wise.
template <class E, class F>
auto convex_map(F&& f, const ConvexSet<E>& s) {
  using R = typename std::decay_t<decltype(coll_map(f, std::declval<const Collection<E>&>()))>::value_type;
  std::vector<Collection<R>> gens;
  gens.reserve(s.size());
  for (const auto& g : s) gens.push_back(coll_map(f, g));
  return cl_convex(s.mode(), std::move(gens));
}

/// Keeps the generators satisfying `pred`, then re-canonicalises.
template <class E, class Pred>
ConvexSet<E> convex_filter(const ConvexSet<E>& s, Pred&& pred) {
  std::vector<Collection<E>> gens;
  for (const auto& g : s)
    if (pred(g)) gens.push_back(g);
  return cl_convex(s.mode(), std::move(gens));
}

/// Every element of a set-like convex set (all nonempty unions of generators).
/// Exponential in the number of generators; `cap` bounds the output size.
template <class E>
std::vector<Collection<E>> materialize(const ConvexSet<E>& s, std::size_t cap = 1u << 16) {
  if (!is_set_like(s.mode())) throw ModeMismatch("materialize: probabilistic hulls are infinite");
  std::set<Collection<E>> seen(s.begin(), s.end());
  std::vector<Collection<E>> frontier(s.begin(), s.end());
  while (!frontier.empty()) {
    std::vector<Collection<E>> next;
    for (const auto& u : frontier) {
      for (const auto& g : s) {
        auto v = coll_union(u, g);
        if (seen.insert(v).second) {
          if (seen.size() > cap) throw EnumerationCapExceeded("convex closure size", cap);
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace cgs
