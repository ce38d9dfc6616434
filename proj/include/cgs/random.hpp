#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cgs/game.hpp"

namespace cgs {

struct RandomGameOptions {
  Mode mode = Mode::nondet;
  int max_states = 4;        // |X|
  int max_continuing = 2;    // |A|
  int max_terminating = 2;   // |B|
  int max_out_degree = 2;    // environment states per controller state
  int max_branching = 3;     // outcomes per environment state
  int stop_percent = 40;     // chance that an outcome terminates
  int deadlock_percent = 5;  // chance that a controller state has no environment successor
};

/// A seeded random bipartite game satisfying every validation rule.
inline BipartiteGame random_game(std::uint64_t seed, const RandomGameOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  BipartiteGame g;
  g.name = "random" + std::to_string(seed);
  g.mode = opt.mode;
  std::vector<std::string> as, bs;
  for (int i = uniform(1, opt.max_continuing); i > 0; --i) as.push_back("a" + std::to_string(as.size() + 1));
  for (int i = uniform(1, opt.max_terminating); i > 0; --i) bs.push_back("b" + std::to_string(bs.size() + 1));
  g.alphabets = Alphabets(as, bs);
  const int nx = uniform(1, opt.max_states);
  const int na = static_cast<int>(as.size());
  const int nb = static_cast<int>(bs.size());

  for (int x = 0; x < nx; ++x) g.controllers.push_back({"x" + std::to_string(x), {}, {}});
  for (int x = 0; x < nx; ++x) {
    const int degree = uniform(1, 100) <= opt.deadlock_percent ? 0 : uniform(1, opt.max_out_degree);
    for (int d = 0; d < degree; ++d) {
      EnvironmentState e{"y" + std::to_string(g.environments.size()), {}};
      std::vector<HStep> steps;
      for (int k = uniform(1, opt.max_branching); k > 0; --k) {
        HStep h = uniform(1, 100) <= opt.stop_percent
                      ? HStep::stop(static_cast<ObsId>(na + uniform(0, nb - 1)))
                      : HStep::go(static_cast<ObsId>(uniform(0, na - 1)), static_cast<StateId>(uniform(0, nx - 1)));
        if (std::find(steps.begin(), steps.end(), h) == steps.end()) steps.push_back(h);
      }
      const int k = static_cast<int>(steps.size());
      // Weights p_i / den with den ≤ 6 and every p_i ≥ 1.
      const int den = uniform(k, 6);
      std::vector<int> parts(steps.size(), 1);
      for (int extra = den - k; extra > 0; --extra) ++parts[static_cast<std::size_t>(uniform(0, k - 1))];
      for (std::size_t i = 0; i < steps.size(); ++i)
        e.outcomes.push_back({steps[i], opt.mode == Mode::prob ? Rational(parts[i], den) : Rational(1)});
      g.controllers[static_cast<std::size_t>(x)].edges.push_back(g.environments.size());
      g.environments.push_back(std::move(e));
    }
  }
  return g;
}

}  // namespace cgs
