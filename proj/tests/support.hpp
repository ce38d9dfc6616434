#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cgs/cgs.hpp"

#ifndef CGS_GAMES_DIR
#error "CGS_GAMES_DIR must point at the games/ directory"
#endif

namespace cgs::test {

inline Coalgebra fixture(const std::string& name) {
  return from_bipartite(dsl::load_game_file(std::string(CGS_GAMES_DIR) + "/" + name + ".game"));
}

inline Collection<Trace> traces_of(const Coalgebra& c, const std::vector<std::string>& ts) {
  std::vector<Trace> out;
  for (const auto& t : ts) out.push_back(dsl::parse_trace(c.alphabets, t));
  return Collection<Trace>::of_set(c.mode, std::move(out));
}

inline ConvexSet<Trace> trace_set(const Coalgebra& c, const std::vector<std::vector<std::string>>& gens) {
  std::vector<Collection<Trace>> out;
  for (const auto& g : gens) out.push_back(traces_of(c, g));
  return cl_convex(c.mode, std::move(out));
}

inline std::string show(const Coalgebra& c, const ConvexSet<Trace>& s) {
  return json::convex_set(s, json::Namer(c)).dump();
}

inline std::string show(const Coalgebra& c, const ConvexSet<Play>& s) {
  return json::convex_set(s, json::Namer(c)).dump();
}

// ---------------------------------------------------------------------------
// Game-tree oracle. It never touches convex closures, Kleisli extension or the
// strategy module: outcomes are strings, built by walking the game tree and
// letting the controller pick at every node independently.

using Outcome = std::map<std::string, Rational>;  // weights are 1 for set-like games

struct Oracle {
  const Coalgebra& c;
  bool decorated;

  // Controller options at x: every nonempty union of generators (set-like
  // modes) or the generators themselves (distributions).
  std::vector<std::vector<std::pair<HStep, Rational>>> options(StateId x) const {
    const auto& gens = c.at(x).generators();
    std::vector<std::vector<std::pair<HStep, Rational>>> out;
    if (c.mode == Mode::prob) {
      for (const auto& g : gens) out.emplace_back(g.begin(), g.end());
      return out;
    }
    std::set<std::set<HStep>> seen;
    for (std::size_t mask = 1; mask < (std::size_t{1} << gens.size()); ++mask) {
      std::set<HStep> u;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (mask >> i & 1)
          for (const auto& [h, w] : gens[i]) u.insert(h);
      if (!seen.insert(u).second) continue;
      std::vector<std::pair<HStep, Rational>> opt;
      for (const auto& h : u) opt.emplace_back(h, Rational(1));
      out.push_back(std::move(opt));
    }
    return out;
  }

  std::string prefix(StateId x, const HStep& h, const std::string& rest) const {
    const auto& o = c.alphabets.name(h.obs);
    if (decorated) return h.is_stop() ? c.states[x] + "#" + o : c.states[x] + "." + o + "." + rest;
    if (h.is_stop()) return "#" + o;
    return rest.front() == '#' ? o + rest : o + "." + rest;
  }

  // Outcomes of strategies from x that complete within r steps.
  std::set<Outcome> complete(StateId x, unsigned r) const {
    std::set<Outcome> out;
    if (r == 0) return out;
    for (const auto& opt : options(x)) {
      std::vector<std::vector<Outcome>> parts;
      for (const auto& [h, w] : opt) {
        std::vector<Outcome> sub;
        if (h.is_stop()) {
          sub.push_back({{prefix(x, h, ""), Rational(1)}});
        } else {
          for (const auto& q : complete(*h.next, r - 1)) {
            Outcome moved;
            for (const auto& [t, v] : q) moved[prefix(x, h, t)] = v;
            sub.push_back(std::move(moved));
          }
        }
        parts.push_back(std::move(sub));
      }
      std::function<void(std::size_t, Outcome)> pick = [&](std::size_t i, Outcome acc) {
        if (i == parts.size()) {
          out.insert(std::move(acc));
          return;
        }
        for (const auto& q : parts[i]) {
          Outcome next = acc;
          for (const auto& [t, v] : q) {
            if (c.mode == Mode::prob) next[t] += v * opt[i].second;
            else next[t] = Rational(1);
          }
          pick(i + 1, std::move(next));
        }
      };
      pick(0, {});
    }
    return out;
  }
};

inline ConvexSet<Trace> oracle_traces(const Coalgebra& c, StateId x, unsigned n) {
  std::vector<Collection<Trace>> gens;
  for (const auto& o : Oracle{c, false}.complete(x, n)) {
    if (c.mode == Mode::prob) {
      std::vector<Collection<Trace>::Entry> entries;
      for (const auto& [t, w] : o) entries.emplace_back(dsl::parse_trace(c.alphabets, t), w);
      gens.push_back(Collection<Trace>::of_dist(std::move(entries)));
    } else {
      std::vector<Trace> elems;
      for (const auto& [t, w] : o) elems.push_back(dsl::parse_trace(c.alphabets, t));
      gens.push_back(Collection<Trace>::of_set(c.mode, std::move(elems)));
    }
  }
  return cl_convex(c.mode, std::move(gens));
}

/// Renders exec_approx generators as the oracle's strings so both can be compared as sets of outcomes.
inline std::set<Outcome> oracle_executions(const Coalgebra& c, StateId x, unsigned n) {
  return Oracle{c, true}.complete(x, n);
}

inline Outcome as_outcome(const Coalgebra& c, const Collection<Play>& u) {
  json::Namer name(c);
  Outcome o;
  for (const auto& [p, w] : u) o[name(p)] = w;
  return o;
}

// ---------------------------------------------------------------------------
// Random game population shared by the campaign tests and the acceptance run.

inline constexpr std::size_t kCampaignCap = 20'000;

struct CampaignGame {
  std::uint64_t seed;
  Coalgebra c;
};

/// The first `count` random games (seeds 1, 2, ...) of the given mode whose
/// strategy outcome sets stay below kCampaignCap up to depth `depth`. Games
/// over the cap are skipped and reported through `skipped`.
inline std::vector<CampaignGame> campaign_population(Mode mode, std::size_t count, unsigned depth,
                                                     std::vector<std::uint64_t>* skipped = nullptr) {
  std::vector<CampaignGame> out;
  RandomGameOptions opt;
  opt.mode = mode;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    auto c = from_bipartite(random_game(seed, opt));
    try {
      (void)strategy_outcomes(c, 0, depth, kCampaignCap);
      (void)iterate(c, true, 0, depth);
      out.push_back({seed, std::move(c)});
    } catch (const EnumerationCapExceeded&) {
      if (skipped) skipped->push_back(seed);
    }
  }
  return out;
}

}  // namespace cgs::test
