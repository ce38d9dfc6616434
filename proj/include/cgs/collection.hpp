#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "cgs/error.hpp"
#include "cgs/rational.hpp"

namespace cgs {

/// How the environment resolves a move bundle.
///   nondet: nonempty finite set (Q)
///   prob:   finitely supported rational distribution (D)
///   lab:    possibly-empty finite set (P_f), only used by the law bench
enum class Mode { nondet, prob, lab };

constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::nondet: return "Q";
    case Mode::prob: return "D";
    case Mode::lab: return "Pf";
  }
  return "?";
}

constexpr bool is_set_like(Mode m) { return m != Mode::prob; }

/// One environment move bundle over elements of type E.
///
/// Entries are kept sorted by element with no duplicates. Set-like modes store
/// weight 1 on every element so that comparison and mapping share one layout.
template <class E>
class Collection {
 public:
  using value_type = E;
  using Entry = std::pair<E, Rational>;

  Collection() : mode_(Mode::lab) {}

  static Collection of_set(Mode mode, std::vector<E> elems) {
    if (mode == Mode::prob) throw ModeMismatch("of_set called with probabilistic mode");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (mode == Mode::nondet && elems.empty())
      throw InvalidCollection("nondeterministic collection must be nonempty");
    std::vector<Entry> entries;
    entries.reserve(elems.size());
    for (auto& e : elems) entries.emplace_back(std::move(e), Rational(1));
    return Collection(mode, std::move(entries));
  }

  /// Builds a distribution; repeated elements have their weights summed.
  static Collection of_dist(std::vector<Entry> weighted) {
    std::sort(weighted.begin(), weighted.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(weighted.size());
    for (auto& [e, w] : weighted) {
      if (!merged.empty() && merged.back().first == e)
        merged.back().second += w;
      else
        merged.emplace_back(std::move(e), std::move(w));
    }
    Rational total;
    for (const auto& [e, w] : merged) {
      if (w.sign() <= 0) throw InvalidCollection("distribution weight " + w.str() + " is not positive");
      total += w;
    }
    if (total != Rational(1)) throw InvalidCollection("distribution sums to " + total.str() + ", not 1");
    return Collection(Mode::prob, std::move(merged));
  }

  static Collection point(Mode mode, E x) {
    std::vector<Entry> entries;
    entries.emplace_back(std::move(x), Rational(1));
    return Collection(mode, std::move(entries));
  }

  /// Trusted constructor: entries must already be sorted, unique, and valid for the mode.
  static Collection from_canonical(Mode mode, std::vector<Entry> entries) {
    return Collection(mode, std::move(entries));
  }

  Mode mode() const { return mode_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool contains(const E& x) const { return find(x) != entries_.end(); }

  Rational weight(const E& x) const {
    auto it = find(x);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  std::vector<E> support() const {
    std::vector<E> out;
    out.reserve(entries_.size());
    for (const auto& [e, w] : entries_) out.push_back(e);
    return out;
  }

  template <class Pred>
  bool all_of(Pred&& pred) const {
    return std::all_of(entries_.begin(), entries_.end(), [&](const Entry& en) { return pred(en.first); });
  }

  friend bool operator==(const Collection&, const Collection&) = default;
  friend auto operator<=>(const Collection&, const Collection&) = default;

 private:
  Collection(Mode mode, std::vector<Entry> entries) : mode_(mode), entries_(std::move(entries)) {}

  typename std::vector<Entry>::const_iterator find(const E& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& en, const E& key) { return en.first < key; });
    return (it != entries_.end() && it->first == x) ? it : entries_.end();
  }

  Mode mode_;
  std::vector<Entry> entries_;
};

/// Support inclusion: every element of `a` is an element of `b`.
template <class E>
bool support_subset(const Collection<E>& a, const Collection<E>& b) {
  auto it = b.begin();
  for (const auto& [e, w] : a) {
    while (it != b.end() && it->first < e) ++it;
    if (it == b.end() || !(it->first == e)) return false;
  }
  return true;
}

/// Functor action T(f).
template <class E, class F>
auto coll_map(F&& f, const Collection<E>& u) {
  using R = std::decay_t<std::invoke_result_t<F&, const E&>>;
  std::vector<typename Collection<R>::Entry> out;
  out.reserve(u.size());
  for (const auto& [e, w] : u) out.emplace_back(f(e), w);
  if (u.mode() == Mode::prob) return Collection<R>::of_dist(std::move(out));
  std::vector<R> elems;
  elems.reserve(out.size());
  for (auto& [r, w] : out) elems.push_back(std::move(r));
  return Collection<R>::of_set(u.mode(), std::move(elems));
}

/// Unit η^T.
template <class E>
Collection<E> coll_unit(Mode mode, E x) {
  return Collection<E>::point(mode, std::move(x));
}

/// Set union; both operands must be set-like and of the same mode.
template <class E>
Collection<E> coll_union(const Collection<E>& a, const Collection<E>& b) {
  if (a.mode() != b.mode() || !is_set_like(a.mode())) throw ModeMismatch("coll_union needs two set-like collections");
  std::vector<typename Collection<E>::Entry> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                 [](const auto& x, const auto& y) { return x.first < y.first; });
  return Collection<E>::from_canonical(a.mode(), std::move(out));
}

/// Convex combination Σ w_i · u_i of distributions. Weights must be positive and sum to 1.
template <class E>
Collection<E> coll_mix(const std::vector<std::pair<const Collection<E>*, Rational>>& parts) {
  std::vector<typename Collection<E>::Entry> out;
  for (const auto& [u, p] : parts) {
    if (u->mode() != Mode::prob) throw ModeMismatch("coll_mix needs distributions");
    for (const auto& [e, w] : *u) out.emplace_back(e, w * p);
  }
  return Collection<E>::of_dist(std::move(out));
}

/// Multiplication μ^T: union of inner sets, or weighted mixture of inner distributions.
template <class E>
Collection<E> coll_mult(const Collection<Collection<E>>& uu) {
  for (const auto& [inner, w] : uu)
    if (inner.mode() != uu.mode()) throw ModeMismatch("coll_mult over mixed modes");
  if (uu.mode() == Mode::prob) {
    std::vector<std::pair<const Collection<E>*, Rational>> parts;
    parts.reserve(uu.size());
    for (const auto& [inner, w] : uu) parts.emplace_back(&inner, w);
    return coll_mix(parts);
  }
  std::vector<E> elems;
  for (const auto& [inner, w] : uu)
    for (const auto& [e, v] : inner) elems.push_back(e);
  return Collection<E>::of_set(uu.mode(), std::move(elems));
}

}  // namespace cgs
