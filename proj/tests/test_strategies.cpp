#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"

namespace cgs {
namespace {

using test::fixture;

std::set<std::string> rendered(const Coalgebra& c, const Collection<Play>& u) {
  json::Namer name(c);
  std::set<std::string> out;
  for (const auto& [p, w] : u) out.insert(name(p));
  return out;
}

std::set<Trace> good_traces(const Coalgebra& c, const std::vector<std::string>& ts) {
  std::set<Trace> out;
  for (const auto& t : ts) out.insert(dsl::parse_trace(c.alphabets, t));
  return out;
}

NStepStrategy restrict(const NStepStrategy& s, unsigned m) {
  NStepStrategy r{s.start, m, {}};
  for (const auto& [p, u] : s.choice)
    if (p.length() < m) r.choice.emplace(p, u);
  return r;
}

TEST(Strategies, CountsOnFigureGames) {
  EXPECT_EQ(count_strategies(fixture("ce_eq_left"), 0, 2), 3u);
  EXPECT_EQ(count_strategies(fixture("ce_eq_middle"), 0, 2), 3u);
  EXPECT_EQ(count_strategies(fixture("ce_eq_right"), 0, 2), 7u);
  EXPECT_EQ(enumerate_strategies(fixture("ce_eq_right"), 0, 2).size(), 7u);
  for (const auto* name : {"intro", "loop", "prob"}) {
    EXPECT_EQ(count_strategies(fixture(name), 0, 0), 1u);
    auto zero = enumerate_strategies(fixture(name), 0, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].choice.empty());
  }
}

TEST(Strategies, EnumerationIsValidDistinctAndCounted) {
  for (const auto* name : {"intro", "ce_eq_middle", "ce_lr_right", "mdp", "prob"}) {
    auto c = fixture(name);
    for (unsigned n = 0; n <= 3; ++n) {
      auto all = enumerate_strategies(c, 0, n);
      EXPECT_EQ(all.size(), count_strategies(c, 0, n)) << name;
      std::set<std::map<Play, Collection<HStep>>> tables;
      for (const auto& s : all) {
        EXPECT_TRUE(check_strategy(c, s).empty()) << name;
        tables.insert(s.choice);
      }
      EXPECT_EQ(tables.size(), all.size()) << name;
    }
  }
}

TEST(Strategies, CheckStrategyFindsProblems) {
  auto c = fixture("ce_eq_right");
  auto s = enumerate_strategies(c, 0, 2).front();
  auto missing = s;
  missing.choice.erase(std::prev(missing.choice.end()));
  EXPECT_FALSE(check_strategy(c, missing).empty());

  auto wrong = s;
  wrong.choice.begin()->second = Collection<HStep>::of_set(Mode::nondet, {HStep::stop(1)});
  EXPECT_FALSE(check_strategy(c, wrong).empty());

  auto extra = s;
  extra.choice.emplace(Play{{0, 0}, {0}, std::nullopt}, Collection<HStep>::of_set(Mode::nondet, {HStep::stop(1)}));
  EXPECT_FALSE(check_strategy(c, extra).empty());
}

TEST(Strategies, EnumerationCapIsAnError) {
  auto c = fixture("intro");
  EXPECT_THROW((void)enumerate_strategies(c, 0, 4, 5), EnumerationCapExceeded);
  EXPECT_THROW((void)strategy_outcomes(c, 0, 4, 3), EnumerationCapExceeded);
}

TEST(PlaysPartial, LoopOutcomes) {
  auto c = fixture("loop");
  const std::vector<std::set<std::string>> expected = {
      {"x"}, {"x#b", "x.a.x"}, {"x#b", "x.a.x#b", "x.a.x.a.x"}};
  for (unsigned n = 0; n < expected.size(); ++n) {
    auto all = enumerate_strategies(c, 0, n);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(rendered(c, plays_partial(c, all[0])), expected[n]);
  }
}

TEST(PlaysCompleted, LoopNeverCompletes) {
  auto c = fixture("loop");
  auto all = enumerate_strategies(c, 0, 10);
  ASSERT_EQ(all.size(), 1u);
  auto r = plays_completed(c, all[0], 10);
  EXPECT_EQ(r.status, CompletionStatus::not_completing);
  EXPECT_TRUE(r.value.empty());
  EXPECT_EQ(r.last_partial.size(), 11u);
  EXPECT_THROW((void)plays_completed(c, all[0], 11), Error);
}

TEST(PlaysCompleted, TerminatingAndProbabilistic) {
  auto one = from_bipartite(dsl::load_game(
      "game g { mode: nondet alphabet A = {a} alphabet B = {b} controller x { -> e; } env e { b } }"));
  auto s = enumerate_strategies(one, 0, 1).front();
  auto r = plays_completed(one, s, 1);
  EXPECT_EQ(r.status, CompletionStatus::exact);
  EXPECT_EQ(r.completed_at, 1u);
  EXPECT_EQ(rendered(one, r.value.generators().at(0)), (std::set<std::string>{"x#b"}));

  auto c = fixture("prob");
  auto all = enumerate_strategies(c, 0, 2);
  ASSERT_EQ(all.size(), 1u);
  auto partial = plays_partial(c, all[0]);
  EXPECT_EQ(test::as_outcome(c, partial), (test::Outcome{{"x#b", Rational(1, 2)}, {"x.a.x1#c", Rational(1, 2)}}));
  auto done = plays_completed(c, all[0], 2);
  EXPECT_EQ(done.status, CompletionStatus::exact);
  EXPECT_EQ(done.value, cl_single(partial));
}

TEST(PlaysPartial, PrefixCoherence) {
  for (const auto* name : {"intro", "loop", "mdp", "ce_eq_middle"}) {
    auto c = fixture(name);
    const unsigned n = 4;
    for (const auto& s : enumerate_strategies(c, 0, n)) {
      auto full = plays_partial(c, s);
      for (unsigned m = 0; m <= n; ++m) {
        auto cut = coll_map([&](const Play& p) { return truncate(p, m); }, full);
        EXPECT_EQ(plays_partial(c, restrict(s, m)), cut) << name << " m=" << m;
      }
    }
  }
}

TEST(StrategyOutcomes, EqualsEnumeratedOutcomes) {
  auto check = [](const Coalgebra& c, unsigned n, const std::string& label) {
    std::set<Collection<Play>> enumerated;
    for (const auto& s : enumerate_strategies(c, 0, n)) enumerated.insert(plays_partial(c, s));
    auto dp = strategy_outcomes(c, 0, n);
    EXPECT_EQ(std::set<Collection<Play>>(dp.begin(), dp.end()), enumerated) << label;
  };
  for (const auto* name : {"intro", "loop", "ce_eq_left", "ce_eq_middle", "ce_eq_right", "prob", "mdp"})
    for (unsigned n = 0; n <= 3; ++n) check(fixture(name), n, name);
  for (auto mode : {Mode::nondet, Mode::prob}) {
    RandomGameOptions opt;
    opt.mode = mode;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto c = from_bipartite(random_game(seed, opt));
      for (unsigned n = 0; n <= 3; ++n) {
        if (count_strategies(c, 0, n) > 3000) continue;
        check(c, n, "seed " + std::to_string(seed));
      }
    }
  }
}

TEST(Verify, FixturesAtAllDepths) {
  for (const auto* name : {"intro", "loop", "ce_lr_left", "ce_lr_right", "ce_eq_left", "ce_eq_middle", "ce_eq_right",
                           "prob", "mdp"}) {
    auto c = fixture(name);
    for (unsigned n = 0; n <= 4; ++n) {
      auto lemma = verify_lemma_main(c, 0, n);
      EXPECT_TRUE(lemma.equal) << name << " n=" << n;
      EXPECT_FALSE(lemma.witness);
      EXPECT_TRUE(verify_theorem_main(c, 0, n).equal) << name << " n=" << n;
      auto tr = verify_traces_via_strategies(c, 0, n);
      EXPECT_TRUE(tr.equal()) << name << " n=" << n;
    }
  }
}

TEST(Verify, LoopBothSidesEmpty) {
  auto r = verify_theorem_main(fixture("loop"), 0, 3);
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.lhs.empty());
  EXPECT_TRUE(r.rhs.empty());
}

TEST(Verify, DeadlockStartIsEmpty) {
  auto c = fixture("intro");
  auto r = verify_traces_via_strategies(c, c.state("n11"), 2);
  EXPECT_TRUE(r.equal());
  EXPECT_TRUE(r.strategies.lhs.empty());
  EXPECT_EQ(r.strategies.strategy_outcomes, 0u);
}

TEST(Verify, IntroForcedSetOnBothSides) {
  auto c = fixture("intro");
  auto r = verify_traces_via_strategies(c, 0, 3);
  auto u = test::traces_of(c, {"b#tick", "a.d#tick"});
  EXPECT_TRUE(convex_member(u, r.strategies.lhs));
  EXPECT_TRUE(convex_member(u, r.strategies.rhs));
}

// Randomised strategies pick a mixture of generators at every history; their
// outcomes must lie in the hull spanned by vertex strategies.
TEST(Strategies, VertexPolicyCoversRandomisedStrategies) {
  std::mt19937_64 rng(7);
  auto mixture = [&](const ConvexSet<HStep>& s) {
    std::vector<std::pair<const Collection<HStep>*, Rational>> parts;
    std::vector<long> raw;
    long total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      raw.push_back(std::uniform_int_distribution<long>(1, 5)(rng));
      total += raw.back();
    }
    for (std::size_t i = 0; i < s.size(); ++i) parts.emplace_back(&s.generators()[i], Rational(raw[i], total));
    return coll_mix(parts);
  };
  std::vector<Coalgebra> games{fixture("mdp"), fixture("prob")};
  RandomGameOptions opt;
  opt.mode = Mode::prob;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) games.push_back(from_bipartite(random_game(seed, opt)));
  for (const auto& c : games) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        NStepStrategy s{0, n, {}};
        std::vector<Play> layer{Play::start(0)};
        bool stuck = false;
        for (unsigned k = 0; k < n && !stuck; ++k) {
          std::vector<Play> next;
          for (const auto& p : layer) {
            if (p.complete()) continue;
            if (c.deadlocked(p.last_state())) {
              stuck = true;
              break;
            }
            auto u = mixture(c.at(p.last_state()));
            s.choice.emplace(p, u);
            for (const auto& [h, w] : u) next.push_back(extend(p, h, true));
          }
          layer = std::move(next);
        }
        if (stuck) continue;
        ASSERT_TRUE(check_strategy(c, s).empty());
        EXPECT_TRUE(convex_member(plays_partial(c, s), iterate(c, true, 0, n)));
      }
    }
  }
}

TEST(Synthesis, IntroForcingWitness) {
  auto c = fixture("intro");
  auto good = good_traces(c, {"b#tick", "a.d#tick"});
  auto r = synthesize_forcing(c, 0, good, 3);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(check_strategy(c, *r.witness).empty());
  ASSERT_TRUE(r.outcome);
  for (const auto& [t, w] : *r.outcome) EXPECT_TRUE(good.contains(t));
  auto done = plays_completed(c, *r.witness, 3);
  ASSERT_EQ(done.status, CompletionStatus::exact);
  EXPECT_EQ(coll_map([](const Play& p) { return to_trace(p); }, done.value.generators().at(0)), *r.outcome);

  EXPECT_FALSE(synthesize_forcing(c, 0, {}, 3).witness);
  EXPECT_FALSE(synthesize_forcing(c, 0, good_traces(c, {"a.b.d#tick"}), 5).witness);
  EXPECT_THROW((void)synthesize_forcing(c, 0, {Trace{{0}, 0}}, 3), Error);
}

TEST(Synthesis, ProbThreshold) {
  auto c = fixture("prob");
  auto through_b = good_traces(c, {"#b"});
  auto r = synthesize_threshold(c, 0, through_b, Rational(3, 4), 3);
  EXPECT_FALSE(r.witness);
  ASSERT_TRUE(r.value);
  EXPECT_EQ(*r.value, Rational(1, 2));
  auto ok = synthesize_threshold(c, 0, through_b, Rational(1, 2), 3);
  ASSERT_TRUE(ok.witness);
  EXPECT_TRUE(check_strategy(c, *ok.witness).empty());

  auto m = fixture("mdp");
  auto win = good_traces(m, {"#win", "go#win"});
  auto best = synthesize_threshold(m, 0, win, Rational(3, 4), 2);
  ASSERT_TRUE(best.witness);
  EXPECT_EQ(*best.value, Rational(3, 4));
  // With one step only the risky coin pays off.
  EXPECT_EQ(*synthesize_threshold(m, 0, win, Rational(0), 1).value, Rational(2, 3));
}

// Oracle: forcing succeeds iff some completed outcome of the game tree lies in good.
TEST(Synthesis, ForcingMatchesOracleOnRandomGames) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto c = from_bipartite(random_game(seed));
    const unsigned n = 3;
    auto outcomes = test::Oracle{c, false}.complete(0, n);
    std::set<std::string> all;
    for (const auto& o : outcomes)
      for (const auto& [t, w] : o) all.insert(t);
    std::set<std::string> good;
    for (const auto& t : all)
      if (rng() % 3 != 0) good.insert(t);
    bool expect = false;
    for (const auto& o : outcomes) {
      bool inside = true;
      for (const auto& [t, w] : o) inside = inside && good.contains(t);
      expect = expect || inside;
    }
    std::set<Trace> g;
    for (const auto& t : good) g.insert(dsl::parse_trace(c.alphabets, t));
    auto r = synthesize_forcing(c, 0, g, n);
    EXPECT_EQ(r.witness.has_value(), expect) << "seed " << seed;
    if (r.witness) {
      EXPECT_TRUE(check_strategy(c, *r.witness).empty()) << "seed " << seed;
    }
  }
}

// Oracle: best weight of good completed plays over vertex strategies, by direct recursion.
TEST(Synthesis, ThresholdValueMatchesOracleOnRandomGames) {
  std::mt19937_64 rng(5);
  RandomGameOptions opt;
  opt.mode = Mode::prob;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto c = from_bipartite(random_game(seed, opt));
    const unsigned n = 3;
    std::set<Trace> good;
    std::function<std::optional<Rational>(StateId, const std::vector<ObsId>&, unsigned)> value =
        [&](StateId x, const std::vector<ObsId>& body, unsigned r) -> std::optional<Rational> {
      if (r == 0) return Rational(0);
      std::optional<Rational> best;
      for (const auto& u : c.at(x)) {
        Rational v;
        bool viable = true;
        for (const auto& [h, w] : u) {
          if (h.is_stop()) {
            if (good.contains(Trace{body, h.obs})) v += w;
            continue;
          }
          auto longer = body;
          longer.push_back(h.obs);
          auto sub = value(*h.next, longer, r - 1);
          if (!sub) {
            viable = false;
            break;
          }
          v += w * *sub;
        }
        if (viable && (!best || v > *best)) best = v;
      }
      return best;
    };
    // Good traces: a random selection of everything reachable within n steps.
    std::function<void(StateId, std::vector<ObsId>, unsigned)> collect = [&](StateId x, std::vector<ObsId> body, unsigned r) {
      if (r == 0) return;
      for (const auto& u : c.at(x))
        for (const auto& [h, w] : u) {
          if (h.is_stop()) {
            if (rng() % 2) good.insert(Trace{body, h.obs});
          } else {
            auto longer = body;
            longer.push_back(h.obs);
            collect(*h.next, longer, r - 1);
          }
        }
    };
    collect(0, {}, n);
    auto expect = value(0, {}, n);
    auto r = synthesize_threshold(c, 0, good, Rational(1, 2), n);
    EXPECT_EQ(r.value, expect) << "seed " << seed;
    EXPECT_EQ(r.witness.has_value(), expect && *expect >= Rational(1, 2)) << "seed " << seed;
  }
}

}  // namespace
}  // namespace cgs
