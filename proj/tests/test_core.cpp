#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "cgs/cgs.hpp"

namespace cgs {
namespace {

using Q = Collection<char>;
using QS = ConvexSet<char>;

Q qset(std::string elems, Mode mode = Mode::nondet) {
  return Q::of_set(mode, std::vector<char>(elems.begin(), elems.end()));
}

Q dist(std::vector<std::pair<char, Rational>> entries) { return Q::of_dist(std::move(entries)); }

QS qcl(std::vector<std::string> gens) {
  std::vector<Q> out;
  for (const auto& g : gens) out.push_back(qset(g));
  return cl_convex(Mode::nondet, std::move(out));
}

QS dcl(std::vector<Q> gens) { return cl_convex(Mode::prob, std::move(gens)); }

// Independent closure oracle: every nonempty union of generators.
std::set<std::set<char>> union_closure(const std::vector<std::string>& gens) {
  std::set<std::set<char>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << gens.size()); ++mask) {
    std::set<char> u;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (mask >> i & 1) u.insert(gens[i].begin(), gens[i].end());
    out.insert(u);
  }
  return out;
}

TEST(Rational, ReducesAndCompares) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, NoOverflow) {
  Rational x(1);
  for (int i = 0; i < 200; ++i) x *= Rational(3, 2);
  for (int i = 0; i < 200; ++i) x /= Rational(3, 2);
  EXPECT_EQ(x, Rational(1));
}

TEST(Collection, RejectsInvalidInput) {
  EXPECT_THROW(Q::of_set(Mode::nondet, {}), InvalidCollection);
  EXPECT_NO_THROW(Q::of_set(Mode::lab, {}));
  EXPECT_THROW(dist({{'a', Rational(1, 2)}}), InvalidCollection);
  EXPECT_THROW(dist({{'a', Rational(3, 2)}, {'b', Rational(-1, 2)}}), InvalidCollection);
}

TEST(Collection, MapCollapsesAndSums) {
  auto id = [](char e) { return e; };
  EXPECT_EQ(coll_map(id, qset("ab")), qset("ab"));
  auto to_z = [](char) { return 'z'; };
  EXPECT_EQ(coll_map(to_z, dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}})), dist({{'z', 1}}));
  auto zw = [](char e) { return e == 'a' ? 'z' : 'w'; };
  EXPECT_EQ(coll_map(zw, qset("ab")), qset("zw"));
}

TEST(Collection, UnitAndMultiplication) {
  EXPECT_EQ(coll_unit(Mode::nondet, 'a'), qset("a"));
  EXPECT_EQ(coll_unit(Mode::prob, 'a'), dist({{'a', 1}}));
  EXPECT_EQ(coll_mult(coll_unit(Mode::nondet, coll_unit(Mode::nondet, 'a'))), qset("a"));

  auto uu = Collection<Q>::of_set(Mode::nondet, {qset("a"), qset("ab")});
  EXPECT_EQ(coll_mult(uu), qset("ab"));

  auto pm = Collection<Q>::of_dist({{dist({{'a', 1}}), Rational(1, 2)}, {dist({{'b', 1}}), Rational(1, 2)}});
  EXPECT_EQ(coll_mult(pm), dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}}));

  auto mix = Collection<Q>::of_dist({{dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}}), Rational(1, 2)},
                                     {dist({{'a', 1}}), Rational(1, 2)}});
  EXPECT_EQ(coll_mult(mix), dist({{'a', Rational(3, 4)}, {'b', Rational(1, 4)}}));
}

TEST(DeltaQ, Examples) {
  using SQ = Collection<std::set<char>>;
  auto one = SQ::of_set(Mode::nondet, {std::set<char>{'a', 'b'}});
  EXPECT_EQ(delta_q(one), (std::set<Q>{qset("a"), qset("b"), qset("ab")}));
  auto two = SQ::of_set(Mode::nondet, {std::set<char>{'a'}, std::set<char>{'b'}});
  EXPECT_EQ(delta_q(two), (std::set<Q>{qset("ab")}));
  auto empty = SQ::of_set(Mode::nondet, {std::set<char>{}});
  EXPECT_TRUE(delta_q(empty).empty());
}

TEST(DeltaD, Examples) {
  using SD = Collection<std::set<char>>;
  auto u = SD::of_dist({{std::set<char>{'a', 'b'}, Rational(1, 2)}, {std::set<char>{'c'}, Rational(1, 2)}});
  EXPECT_EQ(delta_d(u), (std::set<Q>{dist({{'a', Rational(1, 2)}, {'c', Rational(1, 2)}}),
                                     dist({{'b', Rational(1, 2)}, {'c', Rational(1, 2)}})}));
  EXPECT_EQ(delta_d(SD::of_dist({{std::set<char>{'a'}, 1}})), (std::set<Q>{dist({{'a', 1}})}));
  EXPECT_TRUE(delta_d(SD::of_dist({{std::set<char>{}, 1}})).empty());
}

TEST(ConvexSet, QClosureMatchesUnionOracle) {
  const std::vector<std::vector<std::string>> cases = {
      {"a", "b"}, {"ab", "bc", "c"}, {"a", "b", "c", "abc"}, {"ab", "a", "b"}, {"abc"}, {"a", "bc", "cd", "ad"}};
  for (const auto& gens : cases) {
    auto s = qcl(gens);
    auto oracle = union_closure(gens);
    for (const auto& u : oracle) EXPECT_TRUE(convex_member(qset(std::string(u.begin(), u.end())), s));
    // Nothing outside the oracle is a member.
    for (const auto& u : union_closure({"a", "b", "c", "d"}))
      EXPECT_EQ(convex_member(qset(std::string(u.begin(), u.end())), s), oracle.contains(u));
    // Canonical form: equal closures have identical generators.
    std::vector<std::string> closed;
    for (const auto& u : oracle) closed.emplace_back(u.begin(), u.end());
    EXPECT_EQ(s.generators(), qcl(closed).generators());
  }
}

TEST(ConvexSet, Examples) {
  auto s = qcl({"1", "2"});
  EXPECT_EQ(s.generators(), qcl({"1", "2", "12"}).generators());
  EXPECT_TRUE(convex_member(qset("12"), s));
  EXPECT_FALSE(convex_member(qset("3"), s));
  EXPECT_TRUE(cl_convex(Mode::nondet, std::vector<Q>{}).empty());

  auto d = dcl({dist({{'a', 1}}), dist({{'b', 1}})});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_TRUE(convex_member(dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}}), d));

  auto g = dcl({dist({{'a', Rational(1, 2)}, {'c', Rational(1, 2)}}), dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}})});
  EXPECT_TRUE(convex_member(dist({{'a', Rational(1, 2)}, {'b', Rational(1, 4)}, {'c', Rational(1, 4)}}), g));
  EXPECT_FALSE(convex_member(dist({{'a', Rational(1, 4)}, {'b', Rational(1, 4)}, {'c', Rational(1, 2)}}), g));
  EXPECT_THROW((void)convex_member(qset("a"), d), ModeMismatch);
}

TEST(ConvexSet, Equality) {
  EXPECT_TRUE(convex_equal(qcl({"a", "b"}), qcl({"a", "b", "ab"})));
  EXPECT_FALSE(convex_equal(qcl({"a"}), qcl({"a", "b"})));
  EXPECT_TRUE(convex_equal(dcl({dist({{'a', 1}}), dist({{'b', 1}})}),
                           dcl({dist({{'a', 1}}), dist({{'b', 1}}), dist({{'a', Rational(1, 2)}, {'b', Rational(1, 2)}})})));
}

TEST(ConvexSet, HullMembershipAgainstBarycentres) {
  // Oracle: explicit convex combinations with known coefficients are members,
  // and points with weight on an element outside every generator are not.
  std::vector<Q> gens = {dist({{'a', Rational(1, 3)}, {'b', Rational(2, 3)}}), dist({{'b', 1}}),
                         dist({{'a', Rational(1, 2)}, {'c', Rational(1, 2)}}), dist({{'c', 1}})};
  auto s = dcl(gens);
  const std::vector<std::vector<Rational>> lambdas = {
      {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)},
      {Rational(1, 2), 0, Rational(1, 2), 0},
      {0, Rational(1, 3), 0, Rational(2, 3)},
      {Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 2)}};
  for (const auto& lam : lambdas) {
    std::vector<std::pair<const Q*, Rational>> parts;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!lam[i].is_zero()) parts.emplace_back(&gens[i], lam[i]);
    EXPECT_TRUE(convex_member(coll_mix(parts), s));
  }
  EXPECT_FALSE(convex_member(dist({{'a', 1}}), s));
  EXPECT_FALSE(convex_member(dist({{'a', Rational(1, 2)}, {'d', Rational(1, 2)}}), s));
  // a has weight at most 1/2 in every generator mixing it with c, and 1/3 next to b.
  EXPECT_FALSE(convex_member(dist({{'a', Rational(2, 3)}, {'c', Rational(1, 3)}}), s));
}

TEST(ConvexSet, JoinAndMaterialize) {
  auto a = qcl({"a"});
  auto b = qcl({"b"});
  EXPECT_TRUE(convex_equal(join_convex(a, b), qcl({"a", "b"})));
  EXPECT_TRUE(convex_equal(join_convex(a, a), a));
  EXPECT_TRUE(convex_equal(join_convex(QS(Mode::nondet), a), a));
  auto all = materialize(qcl({"a", "b", "c"}));
  EXPECT_EQ(all.size(), 7u);
  EXPECT_THROW((void)materialize(qcl({"a", "b", "c", "d", "e"}), 10), EnumerationCapExceeded);
}

TEST(Functor, LambdaH) {
  using HC = H<Collection<char>>;
  auto stop = lambda_h<char>(Mode::nondet, HC::stop(7));
  EXPECT_EQ(stop, (Collection<H<char>>::of_set(Mode::nondet, {H<char>::stop(7)})));
  auto go = lambda_h<char>(Mode::nondet, HC::go(1, qset("xy")));
  EXPECT_EQ(go, (Collection<H<char>>::of_set(Mode::nondet, {H<char>::go(1, 'x'), H<char>::go(1, 'y')})));
  auto pgo = lambda_h<char>(Mode::prob, HC::go(1, dist({{'x', Rational(1, 3)}, {'y', Rational(2, 3)}})));
  EXPECT_EQ(pgo, (Collection<H<char>>::of_dist({{H<char>::go(1, 'x'), Rational(1, 3)}, {H<char>::go(1, 'y'), Rational(2, 3)}})));
}

TEST(Kleisli, TLevel) {
  auto f = [](char) { return qset("12"); };
  auto g = [](char y) { return y == '1' ? qset("x") : qset("z"); };
  EXPECT_EQ(kleisli_compose_T(g, f)('x'), qset("xz"));
  auto unit = [](char y) { return coll_unit(Mode::nondet, y); };
  EXPECT_EQ(kleisli_compose_T(unit, f)('x'), qset("12"));
  auto pf = [](char) { return dist({{'y', 1}}); };
  auto pg = [](char) { return dist({{'1', Rational(1, 2)}, {'2', Rational(1, 2)}}); };
  EXPECT_EQ(kleisli_compose_T(pg, pf)('x'), dist({{'1', Rational(1, 2)}, {'2', Rational(1, 2)}}));
}

TEST(Kleisli, CompositeLevel) {
  auto f = [](char) { return qcl({"1", "2"}); };
  auto g = [](char y) { return y == '1' ? qcl({"x"}) : qcl({"z"}); };
  EXPECT_TRUE(convex_equal(kleisli_compose(g, f)('x'), qcl({"x", "z", "xz"})));
  auto zero = [](char) { return QS(Mode::nondet); };
  EXPECT_TRUE(kleisli_compose(g, zero)('x').empty());
  EXPECT_TRUE(convex_equal(lift_K([](char) { return qset("a"); })('x'), qcl({"a"})));

  // Generator-level extension agrees with pushing the whole image through δ.
  auto U = qcl({"12", "3"});
  auto gg = [](char y) { return y == '1' ? qcl({"a", "b"}) : y == '2' ? qcl({"c"}) : qcl({"a", "d"}); };
  std::vector<Q> via_delta;
  for (const auto& u : materialize(U)) {
    auto images = coll_map([&](char y) {
      auto all = materialize(gg(y));
      return std::set<Q>(all.begin(), all.end());
    }, u);
    for (const auto& w : delta_q(images)) via_delta.push_back(coll_mult(w));
  }
  EXPECT_TRUE(convex_equal(kleisli_extend(gg, U), cl_convex(Mode::nondet, via_delta)));
}

TEST(Kleisli, LabModeBottomIsNotLeftStrict) {
  auto fx = cl_single(Collection<char>::of_set(Mode::lab, {}));
  auto bot = [](char) { return QS(Mode::lab); };
  auto r = kleisli_extend(bot, fx);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.generators()[0].empty());
}

TEST(Kleisli, Strength) {
  auto u = Collection<H<char>>::of_set(Mode::nondet, {H<char>::go(0, 'y'), H<char>::stop(1)});
  auto s = strength_pair('x', u);
  EXPECT_EQ(s.size(), 2u);
  for (const auto& [p, w] : s) EXPECT_EQ(p.first, 'x');
  auto pu = Collection<H<char>>::of_dist({{H<char>::go(0, 'y'), 1}});
  EXPECT_EQ(strength_pair('x', pu).weight({'x', H<char>::go(0, 'y')}), Rational(1));
}

TEST(Feasibility, ExactSimplex) {
  // 2·c0 + 1·c1 = (4, 3), c0 = (1, 1), c1 = (2, 1)
  std::vector<std::vector<Rational>> cols = {{1, 1}, {2, 1}};
  auto sol = lp::nonnegative_solution(cols, {4, 3});
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[0] * 1 + (*sol)[1] * 2, Rational(4));
  EXPECT_EQ((*sol)[0] + (*sol)[1], Rational(3));
  EXPECT_FALSE(lp::nonnegative_solution(cols, {-1, 0}));
}

}  // namespace
}  // namespace cgs
