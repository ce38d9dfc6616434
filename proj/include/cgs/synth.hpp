#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/error.hpp"
#include "cgs/game.hpp"
#include "cgs/play.hpp"
#include "cgs/semantics.hpp"
#include "cgs/strategy.hpp"

namespace cgs {

struct SynthResult {
  std::optional<NStepStrategy> witness;
  std::optional<Collection<Trace>> outcome;  // traces forced by the witness
  std::optional<Rational> value;             // prob mode: best good weight within the limit
  bool stabilized = false;
};

namespace detail {

inline void check_traces(const Alphabets& ab, const std::set<Trace>& good) {
  for (const auto& t : good) {
    for (auto a : t.body)
      if (!ab.is_continuing(a)) throw Error("good trace uses unknown continuing observation id " + std::to_string(a));
    if (!ab.is_terminating(t.end)) throw Error("good trace ends in unknown terminating observation id " + std::to_string(t.end));
  }
}

// Finds a table under which every play from p completes within r steps with
// a trace in `target`. Choices range over the generators of c: if a union of
// generators forces a subset of target, so does each of them.
class SafeSearch {
 public:
  SafeSearch(const Coalgebra& c, const std::set<Trace>& target) : c_(c), target_(target) {}

  bool force(const Play& p, unsigned r, Table& out) {
    if (r == 0) return false;
    const StateId y = p.last_state();
    auto key = std::make_tuple(y, p.obs, r);
    if (failed_.contains(key)) return false;
    for (const auto& u : c_.at(y)) {
      Table attempt{{p, u}};
      bool ok = true;
      for (const auto& [h, w] : u) {
        Play q = extend(p, h, true);
        if (h.is_stop()) {
          ok = target_.contains(to_trace(q));
        } else {
          ok = force(q, r - 1, attempt);
        }
        if (!ok) break;
      }
      if (ok) {
        out.insert(attempt.begin(), attempt.end());
        return true;
      }
    }
    failed_.insert(key);
    return false;
  }

 private:
  const Coalgebra& c_;
  const std::set<Trace>& target_;
  std::set<std::tuple<StateId, std::vector<ObsId>, unsigned>> failed_;
};

// Best weight of good completed plays from p within r steps, over vertex strategies.
class ValueSearch {
 public:
  ValueSearch(const Coalgebra& c, const std::set<Trace>& good) : c_(c), good_(good) {}

  Rational value(const Play& p, unsigned r) {
    if (p.complete()) return good_.contains(to_trace(p)) ? Rational(1) : Rational(0);
    if (r == 0) return Rational(0);
    auto key = std::make_tuple(p.last_state(), p.obs, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;
    const auto& gens = c_.at(p.last_state()).generators();
    // -1 marks histories from which every strategy runs into a deadlock.
    Rational best(-1);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Rational v;
      bool viable = true;
      for (const auto& [h, w] : gens[i]) {
        auto sub = value(extend(p, h, true), r - 1);
        if (sub.sign() < 0) {
          viable = false;
          break;
        }
        v += w * sub;
      }
      if (viable && v > best) {
        best = v;
        arg = i;
      }
    }
    memo_.emplace(key, std::make_pair(best, arg));
    return best;
  }

  // Tabulates the maximising choices along every conform history.
  void build(const Play& p, unsigned r, Table& out) {
    if (p.complete() || r == 0) return;
    value(p, r);
    const auto& gens = c_.at(p.last_state()).generators();
    const auto& u = gens[memo_.at(std::make_tuple(p.last_state(), p.obs, r)).second];
    out.emplace(p, u);
    for (const auto& [h, w] : u) build(extend(p, h, true), r - 1, out);
  }

 private:
  const Coalgebra& c_;
  const std::set<Trace>& good_;
  std::map<std::tuple<StateId, std::vector<ObsId>, unsigned>, std::pair<Rational, std::size_t>> memo_;
};

}  // namespace detail

/// Nondeterministic synthesis: a strategy completing within `limit` steps whose
/// forced trace set is a nonempty subset of `good`.
inline SynthResult synthesize_forcing(const Coalgebra& c, StateId x, const std::set<Trace>& good, unsigned limit) {
  if (c.mode != Mode::nondet) throw ModeMismatch("synthesize_forcing needs a nondeterministic game");
  if (limit < 1) throw Error("synthesis depth limit must be at least 1");
  detail::check_traces(c.alphabets, good);
  SynthResult res;
  auto approx = traces(c, x, limit);
  res.stabilized = approx.stabilized;
  const Collection<Trace>* target = nullptr;
  for (const auto& u : approx.value)
    if (u.all_of([&](const Trace& t) { return good.contains(t); })) {
      target = &u;
      break;
    }
  if (!target) return res;

  std::set<Trace> allowed;
  for (const auto& [t, w] : *target) allowed.insert(t);
  detail::Table table;
  detail::SafeSearch search(c, allowed);
  if (!search.force(Play::start(x), limit, table))
    throw std::logic_error("trace approximant generator has no forcing strategy");
  NStepStrategy s{x, limit, std::move(table)};
  auto plays = plays_partial(c, s);
  if (!plays.all_of([](const Play& p) { return p.complete(); }))
    throw std::logic_error("synthesised strategy does not complete");
  auto forced = coll_map([](const Play& p) { return to_trace(p); }, plays);
  if (!forced.all_of([&](const Trace& t) { return good.contains(t); }))
    throw std::logic_error("synthesised strategy forces a trace outside the good set");
  res.witness = std::move(s);
  res.outcome = std::move(forced);
  return res;
}

/// Probabilistic synthesis: a vertex strategy under which the plays completed
/// within `limit` steps with a trace in `good` carry weight ≥ threshold.
inline SynthResult synthesize_threshold(const Coalgebra& c, StateId x, const std::set<Trace>& good,
                                        const Rational& threshold, unsigned limit) {
  if (c.mode != Mode::prob) throw ModeMismatch("synthesize_threshold needs a probabilistic game");
  if (limit < 1) throw Error("synthesis depth limit must be at least 1");
  detail::check_traces(c.alphabets, good);
  SynthResult res;
  res.stabilized = stabilization_check(c, x, limit);
  detail::ValueSearch search(c, good);
  const Play root = Play::start(x);
  auto best = search.value(root, limit);
  if (best.sign() < 0) return res;
  res.value = best;
  if (best < threshold) return res;

  detail::Table table;
  search.build(root, limit, table);
  NStepStrategy s{x, limit, std::move(table)};
  auto plays = plays_partial(c, s);
  Rational achieved;
  for (const auto& [p, w] : plays)
    if (p.complete() && good.contains(to_trace(p))) achieved += w;
  if (achieved != *res.value) throw std::logic_error("synthesised strategy misses its computed value");
  std::vector<Collection<Trace>::Entry> completed;
  Rational mass;
  for (const auto& [p, w] : plays)
    if (p.complete()) {
      completed.emplace_back(to_trace(p), w);
      mass += w;
    }
  if (mass == Rational(1)) res.outcome = Collection<Trace>::of_dist(std::move(completed));
  res.witness = std::move(s);
  return res;
}

}  // namespace cgs
