#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/error.hpp"
#include "cgs/functor.hpp"
#include "cgs/kleisli.hpp"
#include "cgs/rational.hpp"

namespace cgs {

/// Continuing observations A and terminating observations B.
/// Ids 0..|A|-1 name A, ids |A|..|A|+|B|-1 name B.
class Alphabets {
 public:
  Alphabets() = default;
  Alphabets(std::vector<std::string> continuing, std::vector<std::string> terminating)
      : continuing_(std::move(continuing)), terminating_(std::move(terminating)) {}

  const std::vector<std::string>& continuing() const { return continuing_; }
  const std::vector<std::string>& terminating() const { return terminating_; }

  std::size_t size() const { return continuing_.size() + terminating_.size(); }

  bool is_continuing(ObsId id) const { return id < continuing_.size(); }
  bool is_terminating(ObsId id) const { return id >= continuing_.size() && id < size(); }

  const std::string& name(ObsId id) const {
    if (id >= size()) throw Error("observation id " + std::to_string(id) + " out of range");
    return is_continuing(id) ? continuing_[id] : terminating_[id - continuing_.size()];
  }

  std::optional<ObsId> find_continuing(std::string_view name) const {
    auto it = std::find(continuing_.begin(), continuing_.end(), name);
    if (it == continuing_.end()) return std::nullopt;
    return static_cast<ObsId>(it - continuing_.begin());
  }

  std::optional<ObsId> find_terminating(std::string_view name) const {
    auto it = std::find(terminating_.begin(), terminating_.end(), name);
    if (it == terminating_.end()) return std::nullopt;
    return static_cast<ObsId>(continuing_.size() + static_cast<std::size_t>(it - terminating_.begin()));
  }

  friend bool operator==(const Alphabets&, const Alphabets&) = default;

 private:
  std::vector<std::string> continuing_;
  std::vector<std::string> terminating_;
};

/// One weighted environment outcome. Weights are ignored in nondeterministic games.
struct Outcome {
  HStep step;
  Rational weight{1};
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

using OutcomeRow = std::vector<Outcome>;

struct ControllerState {
  std::string name;
  std::vector<std::size_t> edges;  // E1: indices into BipartiteGame::environments
  std::vector<OutcomeRow> direct;  // move bundles given without a named environment state
};

struct EnvironmentState {
  std::string name;
  OutcomeRow outcomes;  // E2
};

/// Bipartite game graph (X, Y, E1, E2); E2 is a relation in nondet mode and a
/// distribution per environment state in prob mode.
struct BipartiteGame {
  std::string name;
  Mode mode = Mode::nondet;
  Alphabets alphabets;
  std::vector<ControllerState> controllers;
  std::vector<EnvironmentState> environments;

  std::optional<StateId> find_controller(std::string_view n) const {
    for (std::size_t i = 0; i < controllers.size(); ++i)
      if (controllers[i].name == n) return static_cast<StateId>(i);
    return std::nullopt;
  }
};

struct Diagnostic {
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

namespace detail {

inline void check_row(const BipartiteGame& g, const OutcomeRow& row, const std::string& where,
                      std::vector<Diagnostic>& out) {
  if (row.empty()) {
    out.push_back({"left-totality violated at " + where});
    return;
  }
  Rational sum;
  for (const auto& o : row) {
    const auto& ab = g.alphabets;
    if (o.step.obs >= ab.size()) {
      out.push_back({"unknown observation id " + std::to_string(o.step.obs) + " at " + where});
    } else if (o.step.is_stop() && !ab.is_terminating(o.step.obs)) {
      out.push_back({"terminating move uses continuing observation '" + ab.name(o.step.obs) + "' at " + where});
    } else if (!o.step.is_stop() && !ab.is_continuing(o.step.obs)) {
      out.push_back({"continuing move uses terminating observation '" + ab.name(o.step.obs) + "' at " + where});
    }
    if (!o.step.is_stop() && *o.step.next >= g.controllers.size())
      out.push_back({"dangling controller reference " + std::to_string(*o.step.next) + " at " + where});
    if (g.mode == Mode::prob) {
      if (o.weight.sign() <= 0) out.push_back({"nonpositive weight " + o.weight.str() + " at " + where});
      sum += o.weight;
    }
  }
  if (g.mode == Mode::prob && sum != Rational(1))
    out.push_back({"row sum " + sum.str() + " ≠ 1 at " + where});
}

}  // namespace detail

/// Lists every structural violation; an empty result means the game is valid.
inline std::vector<Diagnostic> validate(const BipartiteGame& g) {
  std::vector<Diagnostic> out;
  const auto& ab = g.alphabets;
  if (g.mode == Mode::lab) out.push_back({"games cannot use the lab mode"});
  if (ab.continuing().empty()) out.push_back({"continuing alphabet A is empty"});
  if (ab.terminating().empty()) out.push_back({"terminating alphabet B is empty"});
  for (const auto& a : ab.continuing())
    if (std::find(ab.terminating().begin(), ab.terminating().end(), a) != ab.terminating().end())
      out.push_back({"A/B overlap on observation '" + a + "'"});
  std::set<std::string> names;
  for (const auto& x : g.controllers)
    if (!names.insert(x.name).second) out.push_back({"duplicate state name '" + x.name + "'"});
  for (const auto& y : g.environments)
    if (!names.insert(y.name).second) out.push_back({"duplicate state name '" + y.name + "'"});
  for (const auto& x : g.controllers) {
    for (auto e : x.edges)
      if (e >= g.environments.size())
        out.push_back({"dangling environment reference " + std::to_string(e) + " at " + x.name});
    for (std::size_t k = 0; k < x.direct.size(); ++k)
      detail::check_row(g, x.direct[k], x.name + " choice " + std::to_string(k + 1), out);
  }
  for (const auto& y : g.environments) detail::check_row(g, y.outcomes, y.name, out);
  return out;
}

/// A game as a coalgebra c : X → P̃T H(X).
struct Coalgebra {
  Mode mode = Mode::nondet;
  Alphabets alphabets;
  std::vector<std::string> states;
  std::vector<ConvexSet<HStep>> c;

  std::size_t size() const { return states.size(); }

  StateId state(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<StateId>(i);
    throw UnknownState(std::string(name));
  }

  const ConvexSet<HStep>& at(StateId x) const {
    if (x >= c.size()) throw UnknownState("#" + std::to_string(x));
    return c[x];
  }

  bool deadlocked(StateId x) const { return at(x).empty(); }
};

inline Collection<HStep> row_collection(Mode mode, const OutcomeRow& row) {
  if (mode == Mode::prob) {
    std::vector<Collection<HStep>::Entry> entries;
    for (const auto& o : row) entries.emplace_back(o.step, o.weight);
    return Collection<HStep>::of_dist(std::move(entries));
  }
  std::vector<HStep> steps;
  for (const auto& o : row) steps.push_back(o.step);
  return Collection<HStep>::of_set(mode, std::move(steps));
}

/// Erases environment states: c(x) = cl{ E2(y) | (x, y) ∈ E1 } (plus direct bundles).
inline Coalgebra from_bipartite(const BipartiteGame& g) {
  auto diags = validate(g);
  if (!diags.empty()) throw Error("invalid game: " + diags.front().message);
  Coalgebra out;
  out.mode = g.mode;
  out.alphabets = g.alphabets;
  for (const auto& x : g.controllers) {
    out.states.push_back(x.name);
    std::vector<Collection<HStep>> gens;
    for (auto e : x.edges) gens.push_back(row_collection(g.mode, g.environments[e].outcomes));
    for (const auto& row : x.direct) gens.push_back(row_collection(g.mode, row));
    out.c.push_back(cl_convex(g.mode, std::move(gens)));
  }
  return out;
}

/// The state-decorated coalgebra c*(x) = stl(x, c(x)).
using DecoratedStep = std::pair<StateId, HStep>;

inline std::vector<ConvexSet<DecoratedStep>> star(const Coalgebra& c) {
  std::vector<ConvexSet<DecoratedStep>> out;
  out.reserve(c.size());
  for (StateId x = 0; x < c.size(); ++x) {
    std::vector<Collection<DecoratedStep>> gens;
    for (const auto& u : c.c[x]) gens.push_back(strength_pair(x, u));
    out.push_back(cl_convex(c.mode, std::move(gens)));
  }
  return out;
}

}  // namespace cgs
