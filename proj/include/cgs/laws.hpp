#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/distributive_law.hpp"
#include "cgs/functor.hpp"
#include "cgs/kleisli.hpp"

namespace cgs::laws {

using Elem = int;
using Set = std::set<Elem>;

/// Result of one law or counterexample check. Counterexample checks expect
/// the law to fail, so they pass only when a violation is reproduced.
struct Report {
  std::string name;
  bool expected_to_hold = true;
  bool holds = true;
  std::size_t cases = 0;
  std::string witness;
  std::uint64_t seed = 0;
  std::string note;

  bool passed() const { return holds == expected_to_hold && cases > 0; }
};

// ---------------------------------------------------------------------------
// Printing small instances.

namespace text {

inline std::string of(Elem e) { return std::string(1, static_cast<char>('a' + e)); }
template <class A, class B>
std::string of(const std::pair<A, B>& p);
template <class T>
std::string of(const std::set<T>& s);
template <class T>
std::string of(const Collection<T>& u);
template <class T>
std::string of(const ConvexSet<T>& s);

template <class A, class B>
std::string of(const std::pair<A, B>& p) {
  return of(p.first) + of(p.second);
}

template <class T>
std::string of(const std::set<T>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += of(x);
    first = false;
  }
  return out + "}";
}

template <class T>
std::string of(const Collection<T>& u) {
  std::string out = u.mode() == Mode::prob ? "[" : "{";
  bool first = true;
  for (const auto& [x, w] : u) {
    if (!first) out += ",";
    out += of(x);
    if (u.mode() == Mode::prob) out += ":" + w.str();
    first = false;
  }
  return out + (u.mode() == Mode::prob ? "]" : "}");
}

template <class T>
std::string of(const ConvexSet<T>& s) {
  std::string out = "cl{";
  bool first = true;
  for (const auto& u : s) {
    if (!first) out += ",";
    out += of(u);
    first = false;
  }
  return out + "}";
}

}  // namespace text

// ---------------------------------------------------------------------------
// Instance domains.

namespace domain {

/// Subsets of `items` with at most `max_size` elements, ordered by size then lexicographically.
template <class T>
std::vector<std::set<T>> subsets(const std::vector<T>& items, std::size_t max_size, bool include_empty) {
  std::vector<std::set<T>> out;
  if (include_empty) out.emplace_back();
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t want) {
    if (pick.size() == want) {
      std::set<T> s;
      for (auto i : pick) s.insert(items[i]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
      pick.push_back(i);
      rec(i + 1, want);
      pick.pop_back();
    }
  };
  for (std::size_t k = 1; k <= max_size && k <= items.size(); ++k) rec(0, k);
  return out;
}

/// Weight patterns used by exhaustive enumeration of distributions.
inline std::vector<std::vector<Rational>> weight_patterns(std::size_t support) {
  switch (support) {
    case 1: return {{Rational(1)}};
    case 2: return {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}, {Rational(2, 3), Rational(1, 3)}};
    case 3: return {{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
    default: return {};
  }
}

/// Every collection over `items` of support size 1..max_support: sets in
/// set-like modes, distributions with the fixed weight patterns in prob mode.
template <class T>
std::vector<Collection<T>> collections(Mode mode, const std::vector<T>& items, std::size_t max_support) {
  std::vector<Collection<T>> out;
  for (const auto& s : subsets(items, max_support, false)) {
    if (is_set_like(mode)) {
      out.push_back(Collection<T>::of_set(mode, std::vector<T>(s.begin(), s.end())));
      continue;
    }
    for (const auto& pattern : weight_patterns(s.size())) {
      std::vector<typename Collection<T>::Entry> entries;
      std::size_t i = 0;
      for (const auto& x : s) entries.emplace_back(x, pattern[i++]);
      out.push_back(Collection<T>::of_dist(std::move(entries)));
    }
  }
  return out;
}

inline std::vector<Elem> carrier(int n) {
  std::vector<Elem> xs;
  for (int i = 0; i < n; ++i) xs.push_back(i);
  return xs;
}

}  // namespace domain

// ---------------------------------------------------------------------------
// Seeded random instances.

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return uniform(1, 100) <= percent; }

  template <class T>
  std::set<T> subset(const std::vector<T>& items, std::size_t max_size, bool allow_empty) {
    const int lo = allow_empty ? 0 : 1;
    const int hi = static_cast<int>(std::min(max_size, items.size()));
    const int k = uniform(lo, std::max(lo, hi));
    std::vector<T> pool = items;
    std::shuffle(pool.begin(), pool.end(), rng_);
    return std::set<T>(pool.begin(), pool.begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(pool.size())));
  }

  /// Positive weights with denominator at most 6.
  std::vector<Rational> weights(std::size_t k) {
    const int den = uniform(static_cast<int>(k), 6);
    std::vector<int> parts(k, 1);
    for (int extra = den - static_cast<int>(k); extra > 0; --extra) ++parts[static_cast<std::size_t>(uniform(0, static_cast<int>(k) - 1))];
    std::vector<Rational> out;
    for (int p : parts) out.emplace_back(p, den);
    return out;
  }

  template <class T>
  Collection<T> collection(Mode mode, const std::vector<T>& items, std::size_t max_support) {
    auto s = subset(items, std::min<std::size_t>(max_support, 6), mode == Mode::lab);
    if (is_set_like(mode)) return Collection<T>::of_set(mode, std::vector<T>(s.begin(), s.end()));
    auto w = weights(s.size());
    std::vector<typename Collection<T>::Entry> entries;
    std::size_t i = 0;
    for (const auto& x : s) entries.emplace_back(x, w[i++]);
    return Collection<T>::of_dist(std::move(entries));
  }

  /// A Kleisli map carrier → P̃T(carrier) with 0..max_gens generators per point.
  std::vector<ConvexSet<Elem>> kleisli_map(Mode mode, int n, std::size_t max_gens, int zero_percent = 10) {
    const auto xs = domain::carrier(n);
    std::vector<ConvexSet<Elem>> f;
    for (int x = 0; x < n; ++x) {
      std::vector<Collection<Elem>> gens;
      if (!chance(zero_percent)) {
        const int k = uniform(1, static_cast<int>(max_gens));
        for (int i = 0; i < k; ++i) gens.push_back(collection(mode, xs, 2));
      }
      f.push_back(cl_convex(mode, std::move(gens)));
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Weak distributive law diagrams.

namespace detail {

template <class E>
bool same_image(Mode mode, const std::set<Collection<E>>& a, const std::set<Collection<E>>& b) {
  if (is_set_like(mode)) return a == b;
  return convex_equal(cl_convex(mode, a), cl_convex(mode, b));
}

template <class E>
std::string image_text(const std::set<Collection<E>>& s) {
  return text::of(s);
}

// [μ^S]: δ ∘ T μ^S = μ^S ∘ S δ ∘ δ_S on T S S X.
template <class E>
std::pair<std::set<Collection<E>>, std::set<Collection<E>>> mu_s_sides(const Collection<std::set<std::set<E>>>& u) {
  auto flat = coll_map(
      [](const std::set<std::set<E>>& uu) {
        std::set<E> out;
        for (const auto& w : uu) out.insert(w.begin(), w.end());
        return out;
      },
      u);
  auto lhs = delta(flat);
  std::set<Collection<E>> rhs;
  for (const auto& w : delta(u)) {
    auto part = delta(w);
    rhs.insert(part.begin(), part.end());
  }
  return {std::move(lhs), std::move(rhs)};
}

// [μ^T]: δ ∘ μ^T_S = S μ^T ∘ δ_T ∘ T δ on T T S X.
template <class E>
std::pair<std::set<Collection<E>>, std::set<Collection<E>>> mu_t_sides(const Collection<Collection<std::set<E>>>& u) {
  auto lhs = delta(coll_mult(u));
  auto td = coll_map([](const Collection<std::set<E>>& v) { return delta(v); }, u);
  std::set<Collection<E>> rhs;
  for (const auto& w : delta(td)) rhs.insert(coll_mult(w));
  return {std::move(lhs), std::move(rhs)};
}

// [η^S]: δ ∘ T η^S = η^S_T on T X.
template <class E>
std::pair<std::set<Collection<E>>, std::set<Collection<E>>> eta_s_sides(const Collection<E>& u) {
  auto lhs = delta(coll_map([](const E& x) { return std::set<E>{x}; }, u));
  return {std::move(lhs), std::set<Collection<E>>{u}};
}

// [η^T]: δ ∘ η^T_S = S η^T on S X. Returns the two sides and, when they differ
// as sets, an element of the left side missing on the right.
template <class E>
std::pair<std::set<Collection<E>>, std::set<Collection<E>>> eta_t_sides(Mode mode, const std::set<E>& u) {
  auto lhs = delta(coll_unit(mode, u));
  std::set<Collection<E>> rhs;
  for (const auto& x : u) rhs.insert(coll_unit(mode, x));
  return {std::move(lhs), std::move(rhs)};
}

// Estimated number of selections δ enumerates on u (set-like modes only).
template <class E>
double delta_cost(const Collection<std::set<E>>& u) {
  double cost = 1;
  for (const auto& [s, w] : u) cost *= is_set_like(u.mode()) ? double((1ull << std::min<std::size_t>(s.size(), 40)) - 1) : double(s.size());
  return cost;
}

inline constexpr double kRandomCostBudget = 20000;

}  // namespace detail

struct WeakLawOptions {
  int exhaustive_carrier = 3;
  int random_carrier = 5;
  std::size_t random_cases = 500;
  std::uint64_t seed = 1;
};

/// [μ^S], [μ^T], [η^S] over every small instance and over seeded random
/// instances; [η^T] is expected to fail and its first violation is recorded.
inline std::vector<Report> check_weak_law(Mode mode, const WeakLawOptions& opt = {}) {
  using detail::same_image;
  std::vector<Report> out;
  const std::string law = mode == Mode::prob ? "δ^PD" : "δ^PQ";
  Sampler rng(opt.seed);

  auto fail = [](Report& r, const std::string& instance, const auto& lhs, const auto& rhs) {
    if (r.holds) r.witness = instance + ": " + text::of(lhs) + " vs " + text::of(rhs);
    r.holds = false;
  };

  // [μ^S]
  {
    Report r{law + " [mu^S]", true, true, 0, "", opt.seed, ""};
    auto run = [&](const Collection<std::set<Set>>& u) {
      auto [lhs, rhs] = detail::mu_s_sides(u);
      ++r.cases;
      if (!same_image(mode, lhs, rhs)) fail(r, text::of(u), lhs, rhs);
    };
    for (int n = 1; n <= opt.exhaustive_carrier; ++n) {
      auto inner = domain::subsets(domain::carrier(n), 2, true);
      auto middle = domain::subsets(inner, 2, true);
      for (const auto& u : domain::collections(mode, middle, 2)) run(u);
    }
    for (std::size_t k = 0; k < opt.random_cases;) {
      const auto xs = domain::carrier(rng.uniform(1, opt.random_carrier));
      std::vector<std::set<Set>> pool;
      const int m = rng.uniform(1, 3);
      for (int i = 0; i < m; ++i) {
        std::set<Set> mid;
        const int s = rng.uniform(0, 3);
        for (int j = 0; j < s; ++j) mid.insert(rng.subset(xs, 3, true));
        pool.push_back(std::move(mid));
      }
      auto u = rng.collection(mode, pool, 3);
      if (is_set_like(mode)) {
        // First δ picks subsets of each middle set; the second then ranges over
        // subsets of every inner set that can appear.
        double cost = detail::delta_cost(u);
        for (const auto& [mid, w] : u)
          for (const auto& s : mid) cost *= double((1u << s.size()) - 1) + 1;
        if (cost > detail::kRandomCostBudget * 10) continue;
      }
      run(u);
      ++k;
    }
    out.push_back(std::move(r));
  }

  // [μ^T]
  {
    Report r{law + " [mu^T]", true, true, 0, "", opt.seed, ""};
    auto run = [&](const Collection<Collection<Set>>& u) {
      auto [lhs, rhs] = detail::mu_t_sides(u);
      ++r.cases;
      if (!same_image(mode, lhs, rhs)) fail(r, text::of(u), lhs, rhs);
    };
    for (int n = 1; n <= opt.exhaustive_carrier; ++n) {
      auto inner = domain::subsets(domain::carrier(n), 2, true);
      auto middle = domain::collections(mode, inner, 2);
      for (const auto& u : domain::collections(mode, middle, 2)) run(u);
    }
    for (std::size_t k = 0; k < opt.random_cases;) {
      const auto xs = domain::carrier(rng.uniform(1, opt.random_carrier));
      std::vector<Collection<Set>> pool;
      const int m = rng.uniform(1, 3);
      for (int i = 0; i < m; ++i) {
        std::vector<Set> sets;
        const int s = rng.uniform(1, 3);
        for (int j = 0; j < s; ++j) sets.push_back(rng.subset(xs, 3, true));
        pool.push_back(rng.collection(mode, sets, 3));
      }
      auto u = rng.collection(mode, pool, 3);
      if (is_set_like(mode)) {
        double cost = 1;
        for (const auto& [v, w] : u) cost *= double((1ull << std::min<std::size_t>(delta(v).size(), 40)) - 1) + detail::delta_cost(v);
        if (cost > detail::kRandomCostBudget) continue;
      }
      run(u);
      ++k;
    }
    out.push_back(std::move(r));
  }

  // [η^S]
  {
    Report r{law + " [eta^S]", true, true, 0, "", opt.seed, ""};
    auto run = [&](const Collection<Elem>& u) {
      auto [lhs, rhs] = detail::eta_s_sides(u);
      ++r.cases;
      if (!same_image(mode, lhs, rhs)) fail(r, text::of(u), lhs, rhs);
    };
    for (int n = 1; n <= opt.exhaustive_carrier; ++n)
      for (const auto& u : domain::collections(mode, domain::carrier(n), 3)) run(u);
    for (std::size_t k = 0; k < opt.random_cases; ++k)
      run(rng.collection(mode, domain::carrier(rng.uniform(1, opt.random_carrier)), 5));
    out.push_back(std::move(r));
  }

  // [η^T]: expected to fail. In prob mode both sides share their points, so
  // the violation is a mixture inside the left hull that the right set lacks.
  {
    Report r{law + " [eta^T]", false, true, 0, "", opt.seed, "counterexample to the fourth weak-law diagram"};
    for (int n = 1; n <= opt.exhaustive_carrier; ++n) {
      for (const auto& u : domain::subsets(domain::carrier(n), static_cast<std::size_t>(n), true)) {
        auto [lhs, rhs] = detail::eta_t_sides(mode, u);
        ++r.cases;
        if (is_set_like(mode)) {
          if (lhs != rhs) fail(r, text::of(u), lhs, rhs);
        } else if (lhs.size() >= 2) {
          auto it = lhs.begin();
          const auto& g1 = *it++;
          const auto& g2 = *it;
          auto mid = coll_mix<Elem>({{&g1, Rational(1, 2)}, {&g2, Rational(1, 2)}});
          if (convex_member(mid, cl_convex(mode, lhs)) && !rhs.contains(mid)) {
            if (r.holds) r.witness = text::of(u) + ": " + text::of(mid) + " in hull " + text::of(lhs) + " but not in " + text::of(rhs);
            r.holds = false;
          }
        } else if (lhs != rhs) {
          fail(r, text::of(u), lhs, rhs);
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// δ(u) = ∅ iff ∅ ∈ supp u, and (prob mode) every mixture μ^D[φ_i ↦ p_i] with
/// supp φ_i ⊆ U_i lies in the hull of the choice-function generators.
inline std::vector<Report> check_delta_properties(Mode mode, const WeakLawOptions& opt = {}) {
  std::vector<Report> out;
  Sampler rng(opt.seed + 17);
  Report empty{"delta empty iff empty set in support", true, true, 0, "", opt.seed, ""};
  for (int n = 1; n <= opt.exhaustive_carrier; ++n) {
    auto sets = domain::subsets(domain::carrier(n), static_cast<std::size_t>(n), true);
    for (const auto& u : domain::collections(mode, sets, 2)) {
      ++empty.cases;
      const bool has_empty = u.contains(Set{});
      if (delta(u).empty() != has_empty) {
        if (empty.holds) empty.witness = text::of(u);
        empty.holds = false;
      }
    }
  }
  out.push_back(std::move(empty));
  if (mode != Mode::prob) return out;

  Report hull{"delta^PD image is the hull of its generators", true, true, 0, "", opt.seed, ""};
  for (std::size_t k = 0; k < opt.random_cases; ++k) {
    const auto xs = domain::carrier(rng.uniform(1, opt.random_carrier));
    std::vector<Set> pool;
    const int m = rng.uniform(1, 3);
    for (int i = 0; i < m; ++i) pool.push_back(rng.subset(xs, 3, false));
    auto u = rng.collection(Mode::prob, pool, 3);
    std::vector<Collection<Elem>> phis;
    for (const auto& [s, p] : u) phis.push_back(rng.collection(Mode::prob, std::vector<Elem>(s.begin(), s.end()), 3));
    std::vector<std::pair<const Collection<Elem>*, Rational>> parts;
    std::size_t i = 0;
    for (const auto& [s, p] : u) parts.emplace_back(&phis[i++], p);
    auto mixed = coll_mix(parts);
    ++hull.cases;
    if (!convex_member(mixed, cl_convex(Mode::prob, delta(u)))) {
      if (hull.holds) hull.witness = text::of(u) + " sample " + text::of(mixed);
      hull.holds = false;
    }
  }
  out.push_back(std::move(hull));
  return out;
}

// ---------------------------------------------------------------------------
// Properties of the composite monad.

using KMap = std::vector<ConvexSet<Elem>>;

inline KMap compose(const KMap& g, const KMap& f) {
  KMap out;
  for (const auto& fx : f) out.push_back(kleisli_extend([&](Elem y) { return g[static_cast<std::size_t>(y)]; }, fx));
  return out;
}

inline KMap join(const KMap& a, const KMap& b) {
  KMap out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(join_convex(a[i], b[i]));
  return out;
}

inline KMap unit_map(Mode mode, int n) {
  KMap out;
  for (int x = 0; x < n; ++x) out.push_back(kleisli_unit(mode, x));
  return out;
}

inline KMap zero_map(Mode mode, int n) { return KMap(static_cast<std::size_t>(n), ConvexSet<Elem>(mode)); }

inline bool pointwise_equal(const KMap& a, const KMap& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!convex_equal(a[i], b[i])) return false;
  return true;
}

inline bool pointwise_below(const KMap& a, const KMap& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!convex_includes(a[i], b[i])) return false;
  return true;
}

inline std::string map_text(const KMap& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? " " : "") + text::of(static_cast<Elem>(i)) + "->" + text::of(f[i]);
  return out;
}

struct PropertyOptions {
  int carrier = 3;
  std::size_t cases = 500;
  std::uint64_t seed = 1;
};

/// Unit and associativity laws of ⊙ at the composite level and at the level of T.
inline std::vector<Report> check_monad_laws(Mode mode, const PropertyOptions& opt = {}) {
  Sampler rng(opt.seed);
  Report unit{std::string("composite unit laws (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  Report assoc{std::string("composite associativity (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  Report tlaws{std::string("T-level Kleisli laws (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const int n = rng.uniform(1, opt.carrier);
    auto f = rng.kleisli_map(mode, n, 2);
    auto g = rng.kleisli_map(mode, n, 2);
    auto h = rng.kleisli_map(mode, n, 2);
    auto eta = unit_map(mode, n);
    ++unit.cases;
    if (!pointwise_equal(compose(eta, f), f) || !pointwise_equal(compose(f, eta), f)) {
      if (unit.holds) unit.witness = map_text(f);
      unit.holds = false;
    }
    ++assoc.cases;
    if (!pointwise_equal(compose(compose(h, g), f), compose(h, compose(g, f)))) {
      if (assoc.holds) assoc.witness = "f: " + map_text(f) + " g: " + map_text(g) + " h: " + map_text(h);
      assoc.holds = false;
    }

    // T-level maps X → T(X) and their lift along K.
    const auto xs = domain::carrier(n);
    std::vector<Collection<Elem>> tf, tg, th;
    for (int x = 0; x < n; ++x) {
      tf.push_back(rng.collection(mode, xs, 3));
      tg.push_back(rng.collection(mode, xs, 3));
      th.push_back(rng.collection(mode, xs, 3));
    }
    auto F = [&](Elem x) { return tf[static_cast<std::size_t>(x)]; };
    auto G = [&](Elem x) { return tg[static_cast<std::size_t>(x)]; };
    auto Hh = [&](Elem x) { return th[static_cast<std::size_t>(x)]; };
    auto unitT = [&](Elem x) { return coll_unit(mode, x); };
    auto hg = kleisli_compose_T(Hh, G);
    auto gf = kleisli_compose_T(G, F);
    auto lhs = kleisli_compose_T(hg, F);
    auto rhs = kleisli_compose_T(Hh, gf);
    auto left_unit = kleisli_compose_T(unitT, F);
    auto right_unit = kleisli_compose_T(F, unitT);
    auto lifted = lift_K(gf);
    auto lf = lift_K(F);
    auto lg = lift_K(G);
    ++tlaws.cases;
    for (int x = 0; x < n; ++x) {
      bool ok = lhs(x) == rhs(x) && left_unit(x) == tf[static_cast<std::size_t>(x)] &&
                right_unit(x) == tf[static_cast<std::size_t>(x)] &&
                convex_equal(lifted(x), kleisli_extend(lg, lf(x)));
      if (!ok) {
        if (tlaws.holds) tlaws.witness = "at " + text::of(x) + " f(x)=" + text::of(tf[static_cast<std::size_t>(x)]);
        tlaws.holds = false;
      }
    }
  }
  return {unit, assoc, tlaws};
}

/// Join preservation of ⊙. Pre-composition preserves arbitrary binary joins.
/// Post-composition preserves joins of chains g1 ⊑ g2; for unrelated g1, g2
/// only (g1 ⊙ f) ⋁ (g2 ⊙ f) ⊑ (g1 ⋁ g2) ⊙ f holds, because the environment's
/// branches of f may each be answered by a different summand. The number of
/// strict instances seen is recorded in the note.
inline std::vector<Report> check_bilinearity(Mode mode, const PropertyOptions& opt = {}) {
  Sampler rng(opt.seed + 1);
  const std::string m(to_string(mode));
  Report chain{"join preservation, post-composition along chains (" + m + ")", true, true, 0, "", opt.seed, ""};
  Report lax{"join preservation, post-composition lax inclusion (" + m + ")", true, true, 0, "", opt.seed, ""};
  Report right{"join preservation, pre-composition (" + m + ")", true, true, 0, "", opt.seed, ""};
  std::size_t strict = 0;
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const int n = rng.uniform(1, opt.carrier);
    auto f = rng.kleisli_map(mode, n, 2);
    auto f2 = rng.kleisli_map(mode, n, 2);
    auto g1 = rng.kleisli_map(mode, n, 2);
    auto g2 = rng.kleisli_map(mode, n, 2);
    auto upper = join(g1, g2);  // g1 ⊑ upper

    ++chain.cases;
    if (!pointwise_equal(compose(join(g1, upper), f), join(compose(g1, f), compose(upper, f)))) {
      if (chain.holds) chain.witness = "f: " + map_text(f) + " g1: " + map_text(g1) + " g2: " + map_text(upper);
      chain.holds = false;
    }
    ++lax.cases;
    auto separate = join(compose(g1, f), compose(g2, f));
    auto together = compose(upper, f);
    if (!pointwise_below(separate, together)) {
      if (lax.holds) lax.witness = "f: " + map_text(f) + " g1: " + map_text(g1) + " g2: " + map_text(g2);
      lax.holds = false;
    } else if (!pointwise_below(together, separate)) {
      ++strict;
    }
    ++right.cases;
    if (!pointwise_equal(compose(g1, join(f, f2)), join(compose(g1, f), compose(g1, f2)))) {
      if (right.holds) right.witness = "f1: " + map_text(f) + " f2: " + map_text(f2) + " g: " + map_text(g1);
      right.holds = false;
    }
  }
  lax.note = std::to_string(strict) + " of " + std::to_string(lax.cases) + " instances strict";
  return {chain, lax, right};
}

/// The zero map is absorbing on both sides, a unit for joins, and below every map.
inline Report check_zero_bottom(Mode mode, const PropertyOptions& opt = {}) {
  Sampler rng(opt.seed + 2);
  Report r{std::string("zero maps are bottom (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const int n = rng.uniform(1, opt.carrier);
    auto f = rng.kleisli_map(mode, n, 2);
    auto zero = zero_map(mode, n);
    ++r.cases;
    bool ok = pointwise_equal(compose(zero, f), zero) && pointwise_equal(compose(f, zero), zero) &&
              pointwise_equal(join(zero, f), f) && pointwise_below(zero, f);
    for (const auto& fx : f)
      for (const auto& u : fx) ok = ok && !convex_member(u, ConvexSet<Elem>(mode));
    if (!ok) {
      if (r.holds) r.witness = map_text(f);
      r.holds = false;
    }
  }
  return r;
}

/// f ⊑ g pointwise implies H̄(f) ⊑ H̄(g) on every element of H(X), with |A| = |B| = 2.
inline Report check_local_monotonicity(Mode mode, const PropertyOptions& opt = {}) {
  Sampler rng(opt.seed + 3);
  Report r{std::string("local monotonicity of the lifted functor (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const int n = rng.uniform(1, opt.carrier);
    auto g = rng.kleisli_map(mode, n, 3, 0);
    KMap f;
    for (const auto& gx : g) {
      std::vector<Collection<Elem>> keep;
      for (const auto& u : gx)
        if (rng.chance(60)) keep.push_back(u);
      f.push_back(cl_convex(mode, std::move(keep)));
    }
    auto hf = h_extend(mode, [&](const Elem& x) { return f[static_cast<std::size_t>(x)]; });
    auto hg = h_extend(mode, [&](const Elem& x) { return g[static_cast<std::size_t>(x)]; });
    std::vector<H<Elem>> steps{H<Elem>::stop(2), H<Elem>::stop(3)};
    for (ObsId a = 0; a < 2; ++a)
      for (int x = 0; x < n; ++x) steps.push_back(H<Elem>::go(a, x));
    ++r.cases;
    for (const auto& h : steps) {
      if (!convex_includes(hf(h), hg(h))) {
        if (r.holds) r.witness = "f: " + map_text(f) + " g: " + map_text(g);
        r.holds = false;
      }
    }
  }
  return r;
}

/// s ⊆ cl(s), monotonicity of cl, and idempotence checked against the full closure.
inline Report check_closure_laws(Mode mode, const PropertyOptions& opt = {}) {
  Sampler rng(opt.seed + 4);
  Report r{std::string("closure operator laws (") + std::string(to_string(mode)) + ")", true, true, 0, "", opt.seed, ""};
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const auto xs = domain::carrier(rng.uniform(1, opt.carrier + 1));
    std::vector<Collection<Elem>> s;
    const int m = rng.uniform(0, 4);
    for (int i = 0; i < m; ++i) s.push_back(rng.collection(mode, xs, 3));
    auto bigger = s;
    bigger.push_back(rng.collection(mode, xs, 3));
    auto cs = cl_convex(mode, s);
    auto cb = cl_convex(mode, bigger);
    bool ok = true;
    for (const auto& u : s) ok = ok && convex_member(u, cs);
    ok = ok && convex_includes(cs, cb);
    if (is_set_like(mode)) {
      ok = ok && cl_convex(mode, materialize(cs)) == cs;
    } else if (cs.size() >= 2) {
      // Adding interior points must not change the hull.
      auto extra = cs.generators();
      extra.push_back(coll_mix<Elem>({{&cs.generators()[0], Rational(1, 3)}, {&cs.generators()[1], Rational(2, 3)}}));
      ok = ok && convex_equal(cl_convex(mode, extra), cs);
    }
    ++r.cases;
    if (!ok) {
      if (r.holds) r.witness = text::of(cs);
      r.holds = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counterexample reproductions.

/// In lab mode (possibly-empty sets), ⊥ ⊙ f(x) = {∅} ≠ ∅ = ⊥(x) for f(x) = {∅},
/// and the composite applied to the empty set has exactly two elements.
struct LeftStrictness {
  ConvexSet<Elem> bottom_after_f;
  ConvexSet<Elem> bottom;
  std::vector<ConvexSet<Elem>> empty_carrier_values;
  Report report;
};

inline LeftStrictness repro_left_strictness() {
  LeftStrictness out;
  const Mode lab = Mode::lab;
  auto fx = cl_single(Collection<Elem>::of_set(lab, {}));
  auto bot = [&](Elem) { return ConvexSet<Elem>(lab); };
  out.bottom_after_f = kleisli_extend(bot, fx);
  out.bottom = bot(0);

  // All convex sets of collections over the empty carrier: subsets of {∅}.
  std::vector<Collection<Elem>> elems{Collection<Elem>::of_set(lab, {})};
  std::vector<ConvexSet<Elem>> values;
  for (unsigned mask = 0; mask < (1u << elems.size()); ++mask) {
    std::vector<Collection<Elem>> pick;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask & (1u << i)) pick.push_back(elems[i]);
    auto s = cl_convex(lab, pick);
    if (std::find(values.begin(), values.end(), s) == values.end()) values.push_back(s);
  }
  out.empty_carrier_values = values;

  const auto empty_coll = Collection<Elem>::of_set(lab, {});
  const bool is_singleton_empty =
      out.bottom_after_f.size() == 1 && out.bottom_after_f.generators()[0] == empty_coll;
  Report r{"left strictness (lab mode)", false, true, 1, "", 0, ""};
  r.holds = !(is_singleton_empty && out.bottom.empty() && values.size() == 2);
  if (!r.holds)
    r.witness = "bot . f(x) = " + text::of(out.bottom_after_f) + " but bot(x) = " + text::of(out.bottom) +
                "; convex sets over the empty carrier: " + [&] {
                  std::string all;
                  for (const auto& s : values) all += (all.empty() ? "" : ", ") + text::of(s);
                  return all;
                }();
  out.report = std::move(r);
  return out;
}

/// Both sides of the commutativity equation on U = cl{{x1},{x2}}, V = cl{{y1,y2}}
/// (and the analogue with point masses and the uniform distribution).
struct Commutativity {
  ConvexSet<std::pair<Elem, Elem>> str_then_stl;  // μ ∘ P̃T(stl) ∘ str: resolve U first
  ConvexSet<std::pair<Elem, Elem>> stl_then_str;  // μ ∘ P̃T(str) ∘ stl: resolve V first
  Report report;
};

inline Commutativity repro_commutativity_failure(Mode mode) {
  using P = std::pair<Elem, Elem>;
  Commutativity out;
  ConvexSet<Elem> u, v;
  if (mode == Mode::prob) {
    u = cl_convex(mode, std::vector<Collection<Elem>>{coll_unit(mode, 0), coll_unit(mode, 1)});
    v = cl_single(Collection<Elem>::of_dist({{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  } else {
    u = cl_convex(mode, std::vector<Collection<Elem>>{coll_unit(mode, 0), coll_unit(mode, 1),
                                                      Collection<Elem>::of_set(mode, {0, 1})});
    v = cl_single(Collection<Elem>::of_set(mode, {0, 1}));
  }
  out.str_then_stl = kleisli_extend([&](Elem x) { return convex_map([x](Elem y) { return P(x, y); }, v); }, u);
  out.stl_then_str = kleisli_extend([&](Elem y) { return convex_map([y](Elem x) { return P(x, y); }, u); }, v);

  Report r{std::string("commutativity (") + std::string(to_string(mode)) + ")", false, true, 1, "", 0,
           mode == Mode::prob ? "derived instance: point masses against the uniform distribution" : ""};
  const bool included = convex_includes(out.str_then_stl, out.stl_then_str);
  const bool strict = !convex_includes(out.stl_then_str, out.str_then_stl);
  r.holds = !(included && strict);
  r.witness = text::of(out.str_then_stl) + " strictly below " + text::of(out.stl_then_str);
  out.report = std::move(r);
  return out;
}

/// The ω-cpo failure for the possibly-infinite nonempty powerset needs an
/// infinite carrier and an infinite chain, so it is described, not executed.
inline constexpr std::string_view kOmegaCpoNote =
    "omega-cpo failure for the possibly-infinite nonempty powerset: not executable, no finite truncation of the "
    "carrier exhibits it";

inline std::vector<Report> run_laws(Mode mode, std::uint64_t seed, int bound, std::size_t cases = 500) {
  std::vector<Report> out;
  auto add = [&](std::vector<Report> rs) { out.insert(out.end(), rs.begin(), rs.end()); };
  if (mode == Mode::lab) {
    out.push_back(repro_left_strictness().report);
    return out;
  }
  WeakLawOptions w{bound, 5, cases, seed};
  PropertyOptions p{bound, cases, seed};
  add(check_weak_law(mode, w));
  add(check_delta_properties(mode, w));
  add(check_monad_laws(mode, p));
  add(check_bilinearity(mode, p));
  out.push_back(check_zero_bottom(mode, p));
  out.push_back(check_local_monotonicity(mode, p));
  out.push_back(check_closure_laws(mode, p));
  out.push_back(repro_commutativity_failure(mode).report);
  return out;
}

}  // namespace cgs::laws
