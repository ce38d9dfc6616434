#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cgs/rational.hpp"

namespace cgs::lp {

/// Finds λ ≥ 0 with Σ_j λ_j · columns[j] = target, or nullopt if none exists.
///
/// Exact phase-one simplex over the rationals with Bland's rule, so it
/// terminates and never rounds. Every column must have target.size() rows.
inline std::optional<std::vector<Rational>> nonnegative_solution(
    const std::vector<std::vector<Rational>>& columns, const std::vector<Rational>& target) {
  const std::size_t m = target.size();
  const std::size_t k = columns.size();
  const std::size_t width = k + m;  // structural columns followed by one artificial per row

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = target[i].sign() < 0;
    for (std::size_t j = 0; j < k; ++j) tab[i][j] = flip ? -columns[j][i] : columns[j][i];
    tab[i][k + i] = Rational(1);
    tab[i][width] = flip ? -target[i] : target[i];
    basis[i] = k + i;
  }

  // Reduced costs for minimising the sum of artificials; cost[width] holds -objective.
  std::vector<Rational> cost(width + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) cost[j] -= tab[i][j];
    cost[width] -= tab[i][width];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (cost[j].sign() < 0) { enter = j; break; }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter].sign() <= 0) continue;
      Rational ratio = tab[i][width] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for a phase-one objective bounded by 0

    Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter].is_zero()) continue;
      Rational factor = tab[i][enter];
      for (std::size_t j = 0; j <= width; ++j)
        if (!tab[leave][j].is_zero()) tab[i][j] -= factor * tab[leave][j];
    }
    if (!cost[enter].is_zero()) {
      Rational factor = cost[enter];
      for (std::size_t j = 0; j <= width; ++j)
        if (!tab[leave][j].is_zero()) cost[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  if (!cost[width].is_zero()) return std::nullopt;
  std::vector<Rational> lambda(k);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) lambda[basis[i]] = tab[i][width];
  return lambda;
}

}  // namespace cgs::lp
