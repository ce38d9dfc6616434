#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/error.hpp"

namespace cgs {

/// Calls fn(indices) for every tuple in the product {0..sizes[0]-1} × ...
/// An empty `sizes` yields exactly one empty tuple; any zero size yields none.
template <class F>
void for_each_selection(const std::vector<std::size_t>& sizes, F&& fn) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sizes[pos]) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (idx.empty()) return;
  }
}

namespace detail {

template <class E>
std::vector<std::vector<E>> nonempty_subsets(const std::set<E>& u) {
  if (u.size() > 20) throw EnumerationCapExceeded("subset enumeration of a set", 20);
  std::vector<E> elems(u.begin(), u.end());
  std::vector<std::vector<E>> out;
  const std::size_t n = elems.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<E> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(elems[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Weak distributive law QP → PQ (and P_f P → P P_f in lab mode):
///   {U_i} ↦ { ⋃ V_i | ∅ ⊂ V_i ⊆ U_i }.
/// The result is empty exactly when some U_i is empty.
template <class E>
std::set<Collection<E>> delta_q(const Collection<std::set<E>>& u) {
  if (!is_set_like(u.mode())) throw ModeMismatch("delta_q needs a set-like outer collection");
  std::vector<std::vector<std::vector<E>>> choices;
  std::vector<std::size_t> sizes;
  for (const auto& [ui, w] : u) {
    choices.push_back(detail::nonempty_subsets(ui));
    sizes.push_back(choices.back().size());
  }
  std::set<Collection<E>> out;
  for_each_selection(sizes, [&](const std::vector<std::size_t>& idx) {
    std::vector<E> all;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& v = choices[i][idx[i]];
      all.insert(all.end(), v.begin(), v.end());
    }
    out.insert(Collection<E>::of_set(u.mode(), std::move(all)));
  });
  return out;
}

/// Weak distributive law DP → PD, returned as the generators of its image:
///   [U_i ↦ p_i] ↦ hull{ Σ p_i · δ_{e_i} | e_i ∈ U_i }.
/// Every distribution φ_i with supp φ_i ⊆ U_i is a mixture of point masses, so
/// the hull of these generators is the whole image. Empty iff some U_i = ∅.
template <class E>
std::set<Collection<E>> delta_d(const Collection<std::set<E>>& u) {
  if (u.mode() != Mode::prob) throw ModeMismatch("delta_d needs a distribution");
  std::vector<std::vector<E>> choices;
  std::vector<Rational> weights;
  std::vector<std::size_t> sizes;
  for (const auto& [ui, p] : u) {
    choices.emplace_back(ui.begin(), ui.end());
    weights.push_back(p);
    sizes.push_back(ui.size());
  }
  std::set<Collection<E>> out;
  for_each_selection(sizes, [&](const std::vector<std::size_t>& idx) {
    std::vector<typename Collection<E>::Entry> entries;
    for (std::size_t i = 0; i < idx.size(); ++i) entries.emplace_back(choices[i][idx[i]], weights[i]);
    out.insert(Collection<E>::of_dist(std::move(entries)));
  });
  return out;
}

/// Dispatches on the collection mode.
template <class E>
std::set<Collection<E>> delta(const Collection<std::set<E>>& u) {
  return u.mode() == Mode::prob ? delta_d(u) : delta_q(u);
}

}  // namespace cgs
