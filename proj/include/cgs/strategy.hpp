#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/error.hpp"
#include "cgs/game.hpp"
#include "cgs/kleisli.hpp"
#include "cgs/play.hpp"
#include "cgs/semantics.hpp"

namespace cgs {

inline constexpr std::size_t kDefaultStrategyCap = 200'000;
inline constexpr std::size_t kDefaultOutcomeCap = 200'000;

/// An n-step strategy from `start`: one chosen collection for every σ-conform
/// partial execution of length < depth. Histories are decorated plays, so the
/// table can depend on the whole past.
struct NStepStrategy {
  StateId start = 0;
  unsigned depth = 0;
  std::map<Play, Collection<HStep>> choice;

  friend bool operator==(const NStepStrategy&, const NStepStrategy&) = default;
};

/// What the controller may pick at x: every element of c(x) in nondet mode,
/// the generators (vertices) of c(x) in prob mode.
class ChoiceOptions {
 public:
  explicit ChoiceOptions(const Coalgebra& c, std::size_t cap = 1u << 16) : c_(c), cap_(cap) {}

  const std::vector<Collection<HStep>>& at(StateId x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const auto& s = c_.at(x);
    std::vector<Collection<HStep>> opts = is_set_like(s.mode()) ? materialize(s, cap_) : s.generators();
    return cache_.emplace(x, std::move(opts)).first->second;
  }

 private:
  const Coalgebra& c_;
  std::size_t cap_;
  std::map<StateId, std::vector<Collection<HStep>>> cache_;
};

/// x a q: prefixes a play starting at q's first state with one interaction.
inline Play prepend(StateId x, ObsId a, const Play& q) {
  Play p;
  p.states.reserve(q.states.size() + 1);
  p.states.push_back(x);
  p.states.insert(p.states.end(), q.states.begin(), q.states.end());
  p.obs.reserve(q.obs.size() + 1);
  p.obs.push_back(a);
  p.obs.insert(p.obs.end(), q.obs.begin(), q.obs.end());
  p.end = q.end;
  return p;
}

/// Number of n-step strategies from x, saturating at UINT64_MAX.
inline std::uint64_t count_strategies(const Coalgebra& c, StateId x, unsigned n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) { return (b != 0 && a > kMax / b) ? kMax : a * b; };
  auto add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
  ChoiceOptions options(c);
  std::map<std::pair<StateId, unsigned>, std::uint64_t> memo;
  auto go = [&](auto& self, StateId y, unsigned r) -> std::uint64_t {
    if (r == 0) return 1;
    auto key = std::make_pair(y, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (const auto& u : options.at(y)) {
      std::uint64_t prod = 1;
      for (const auto& [h, w] : u)
        if (!h.is_stop()) prod = mul(prod, self(self, *h.next, r - 1));
      total = add(total, prod);
    }
    memo[key] = total;
    return total;
  };
  (void)c.at(x);
  return go(go, x, n);
}

namespace detail {

using Table = std::map<Play, Collection<HStep>>;

// All strategy tables for the subtree below partial play p with r steps left.
inline std::vector<Table> tables_below(ChoiceOptions& options, const Play& p, unsigned r) {
  if (r == 0) return {Table{}};
  std::vector<Table> out;
  for (const auto& u : options.at(p.last_state())) {
    std::vector<Table> acc{Table{{p, u}}};
    for (const auto& [h, w] : u) {
      if (h.is_stop()) continue;
      auto sub = tables_below(options, extend(p, h, true), r - 1);
      std::vector<Table> next;
      next.reserve(acc.size() * sub.size());
      for (const auto& a : acc)
        for (const auto& s : sub) {
          Table t = a;
          t.insert(s.begin(), s.end());
          next.push_back(std::move(t));
        }
      acc = std::move(next);
    }
    out.insert(out.end(), std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()));
  }
  return out;
}

}  // namespace detail

/// Every n-step strategy from x, in a deterministic order. Throws
/// EnumerationCapExceeded when the count exceeds `cap`.
inline std::vector<NStepStrategy> enumerate_strategies(const Coalgebra& c, StateId x, unsigned n,
                                                      std::size_t cap = kDefaultStrategyCap) {
  const auto count = count_strategies(c, x, n);
  if (count > cap) throw EnumerationCapExceeded("strategy count", cap);
  ChoiceOptions options(c);
  auto tables = detail::tables_below(options, Play::start(x), n);
  std::vector<NStepStrategy> out;
  out.reserve(tables.size());
  for (auto& t : tables) out.push_back(NStepStrategy{x, n, std::move(t)});
  return out;
}

/// The σ-conform partial executions of length < depth, recomputed from the table.
inline std::set<Play> conform_frontier(const NStepStrategy& s) {
  std::set<Play> out;
  std::vector<Play> layer{Play::start(s.start)};
  for (unsigned k = 0; k < s.depth && !layer.empty(); ++k) {
    std::vector<Play> next;
    for (const auto& p : layer) {
      out.insert(p);
      auto it = s.choice.find(p);
      if (it == s.choice.end()) continue;
      for (const auto& [h, w] : it->second)
        if (!h.is_stop()) next.push_back(extend(p, h, true));
    }
    layer = std::move(next);
  }
  return out;
}

/// Empty when σ is a valid n-step strategy for c; otherwise the problems found.
inline std::vector<std::string> check_strategy(const Coalgebra& c, const NStepStrategy& s) {
  std::vector<std::string> problems;
  auto frontier = conform_frontier(s);
  for (const auto& p : frontier)
    if (!s.choice.contains(p)) problems.push_back("missing choice at a conform history of length " + std::to_string(p.length()));
  for (const auto& [p, u] : s.choice) {
    if (!frontier.contains(p)) {
      problems.push_back("choice recorded at a non-conform history");
      continue;
    }
    if (!convex_member(u, c.at(p.last_state()))) problems.push_back("choice is not a member of c(" + c.states[p.last_state()] + ")");
  }
  return problems;
}

/// One step of a strategy: complete plays stay put, partial plays are extended by σ's choice.
template <class Chooser>
Collection<Play> advance(const Collection<Play>& plays, Chooser&& choose) {
  return kleisli_extend_T(
      [&](const Play& p) {
        if (p.complete()) return coll_unit(plays.mode(), p);
        return coll_map([&](const HStep& h) { return extend(p, h, true); }, choose(p));
      },
      plays);
}

/// The n-step partial outcome plays^σ_n(x).
inline Collection<Play> plays_partial(const Coalgebra& c, const NStepStrategy& s) {
  auto choose = [&](const Play& p) -> const Collection<HStep>& {
    auto it = s.choice.find(p);
    if (it == s.choice.end()) throw Error("strategy has no choice at a conform history");
    return it->second;
  };
  auto plays = coll_unit(c.mode, Play::start(s.start));
  for (unsigned k = 0; k < s.depth; ++k) plays = advance(plays, choose);
  return plays;
}

enum class CompletionStatus { exact, not_completing };

struct CompletedOutcome {
  ConvexSet<Play> value;
  CompletionStatus status = CompletionStatus::not_completing;
  Collection<Play> last_partial;  // outcome at the limit when σ has not completed; diagnostics only
  unsigned completed_at = 0;
};

/// Completed outcome of a strategy given as any history → collection function,
/// observed up to `limit` steps: the singleton cl{plays} once every play has
/// completed, ∅ otherwise.
template <class Chooser>
CompletedOutcome plays_completed(Mode mode, StateId start, Chooser&& choose, unsigned limit) {
  auto plays = coll_unit(mode, Play::start(start));
  for (unsigned k = 0;; ++k) {
    if (plays.all_of([](const Play& p) { return p.complete(); }))
      return {cl_single(plays), CompletionStatus::exact, {}, k};
    if (k == limit) return {ConvexSet<Play>(mode), CompletionStatus::not_completing, plays, 0};
    plays = advance(plays, choose);
  }
}

inline CompletedOutcome plays_completed(const Coalgebra& c, const NStepStrategy& s, unsigned limit) {
  if (limit > s.depth) throw Error("plays_completed limit exceeds the strategy's tabulated depth");
  auto choose = [&](const Play& p) -> const Collection<HStep>& {
    auto it = s.choice.find(p);
    if (it == s.choice.end()) throw Error("strategy has no choice at a conform history");
    return it->second;
  };
  return plays_completed(c.mode, s.start, choose, limit);
}

/// {plays^σ_n(x) | σ ∈ Σ_n(x)} without listing strategies: choices below
/// distinct histories are independent, so outcomes of a subtree are combined
/// by a product over the chosen collection's continuing moves.
inline std::vector<Collection<Play>> strategy_outcomes(const Coalgebra& c, StateId x, unsigned n,
                                                       std::size_t cap = kDefaultOutcomeCap) {
  const Mode mode = c.mode;
  ChoiceOptions options(c);
  std::map<std::pair<StateId, unsigned>, std::vector<Collection<Play>>> memo;

  auto go = [&](auto& self, StateId y, unsigned r) -> const std::vector<Collection<Play>>& {
    auto key = std::make_pair(y, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::set<Collection<Play>> found;
    if (r == 0) {
      found.insert(coll_unit(mode, Play::start(y)));
    } else {
      for (const auto& u : options.at(y)) {
        std::vector<std::vector<Collection<Play>>> parts;
        std::vector<Rational> weights;
        std::vector<std::size_t> sizes;
        for (const auto& [h, w] : u) {
          std::vector<Collection<Play>> sub;
          if (h.is_stop()) {
            sub.push_back(coll_unit(mode, extend(Play::start(y), h, true)));
          } else {
            const ObsId a = h.obs;
            for (const auto& q : self(self, *h.next, r - 1))
              sub.push_back(coll_map([&](const Play& t) { return prepend(y, a, t); }, q));
          }
          sizes.push_back(sub.size());
          parts.push_back(std::move(sub));
          weights.push_back(w);
        }
        for_each_selection(sizes, [&](const std::vector<std::size_t>& idx) {
          if (mode == Mode::prob) {
            std::vector<std::pair<const Collection<Play>*, Rational>> mix;
            for (std::size_t i = 0; i < idx.size(); ++i) mix.emplace_back(&parts[i][idx[i]], weights[i]);
            found.insert(coll_mix(mix));
          } else {
            std::vector<Play> elems;
            for (std::size_t i = 0; i < idx.size(); ++i)
              for (const auto& [p, w] : parts[i][idx[i]]) elems.push_back(p);
            found.insert(Collection<Play>::of_set(mode, std::move(elems)));
          }
          if (found.size() > cap) throw EnumerationCapExceeded("strategy outcome count", cap);
        });
      }
    }
    return memo.emplace(key, std::vector<Collection<Play>>(found.begin(), found.end())).first->second;
  };
  (void)c.at(x);
  return go(go, x, n);
}

}  // namespace cgs
