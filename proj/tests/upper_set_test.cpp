#include <gtest/gtest.h>

#include <random>

#include "upperset/parabola.hpp"
#include "upperset/upper_set.hpp"

using namespace upperset;

namespace {

std::shared_ptr<const Cone> orthant() { return std::make_shared<Cone>(Cone::nonnegative_orthant(2)); }
std::shared_ptr<const Cone> ray() { return std::make_shared<Cone>(Cone::from_generators(2, {{0, 1}})); }

bool mem(const UpperSet& a, Vec z) { return member(a, z, 0); }

}  // namespace

TEST(UpperClosure, Examples) {
  auto c = orthant();
  auto a = upper_closure(Polyhedron::point({0, 0}), c);
  EXPECT_TRUE(polyhedron_equal(a.as_polyhedron(), c->as_polyhedron()));
  auto b = upper_closure(Polyhedron::point({1, -1}), c);
  EXPECT_TRUE(polyhedron_equal(b.as_polyhedron(), Polyhedron(2, {{{1, 0}, 1}, {{0, 1}, -1}})));
}

TEST(UpperClosure, SegmentPlusRayMatchesMembershipGrid) {
  auto c = ray();
  auto a = upper_closure(Polyhedron::box({0, 0}, {1, 0}), c);
  for (int i = -8; i <= 12; ++i)
    for (int j = -8; j <= 8; ++j) {
      Vec z{make_rational(i, 4), make_rational(j, 4)};
      bool brute = z[0] >= 0 && z[0] <= 1 && z[1] >= 0;
      EXPECT_EQ(mem(a, z), brute);
    }
  auto again = upper_closure(a.as_polyhedron(), c);
  EXPECT_TRUE(polyhedron_equal(again.as_polyhedron(), a.as_polyhedron()));
}

TEST(SetOrder, Examples) {
  auto c = orthant();
  auto cone_set = embed_point({0, 0}, c);
  auto shifted = embed_point({1, 1}, c);
  EXPECT_TRUE(set_order_leq(cone_set, shifted).holds);
  auto r = set_order_leq(shifted, cone_set);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(mem(cone_set, *r.witness));
  EXPECT_FALSE(mem(shifted, *r.witness));
  auto a = embed_point({0, 0}, c);
  auto b = embed_point({2, -1}, c);
  auto u = lattice_inf({a, b});
  EXPECT_TRUE(set_order_leq(u, a).holds);
  EXPECT_TRUE(set_order_leq(u, b).holds);
  EXPECT_FALSE(set_order_leq(a, u).holds);
}

TEST(SetOrder, UnionCoverageNeedsBothPieces) {
  // The strip {0 <= z1} is covered by {z1 <= 1} ∪ {z1 >= 1}-type pieces only jointly.
  auto c = ray();
  auto left = UpperSet::from_polyhedron(Polyhedron(2, {{{1, 0}, 0}, {{-1, 0}, -1}}), c);
  auto right = UpperSet::from_polyhedron(Polyhedron(2, {{{1, 0}, 1}, {{-1, 0}, -2}}), c);
  auto whole = UpperSet::from_polyhedron(Polyhedron(2, {{{1, 0}, 0}, {{-1, 0}, -2}}), c);
  EXPECT_TRUE(set_order_leq(lattice_inf({left, right}), whole).holds);
  EXPECT_FALSE(set_order_leq(left, whole).holds);
  auto gap = UpperSet::from_polyhedron(Polyhedron(2, {{{1, 0}, make_rational(3, 2)}, {{-1, 0}, -2}}), c);
  auto r = set_order_leq(lattice_inf({left, gap}), whole);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_GT((*r.witness)[0], 1);
  EXPECT_LT((*r.witness)[0], make_rational(3, 2));
}

TEST(Lattice, InfExamples) {
  auto c = orthant();
  auto a = embed_point({0, 0}, c);
  auto b = embed_point({2, -1}, c);
  EXPECT_TRUE(polyhedron_equal(lattice_inf({a}).as_polyhedron(), a.as_polyhedron()));
  EXPECT_TRUE(polyhedron_equal(lattice_inf({UpperSet::empty(c), a}).as_polyhedron(), a.as_polyhedron()));
  auto u = lattice_inf({a, b});
  EXPECT_TRUE(mem(u, {2, -1}));
  EXPECT_TRUE(mem(u, {0, 0}));
  EXPECT_FALSE(mem(u, {-1, 0}));
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      bool brute = (i >= 0 && j >= 0) || (i >= 2 && j >= -1);
      EXPECT_EQ(mem(u, {i, j}), brute);
    }
  EXPECT_THROW(lattice_inf({}), std::invalid_argument);
}

TEST(Lattice, SupExamples) {
  auto c = orthant();
  auto a = embed_point({0, 0}, c);
  auto b = embed_point({2, -1}, c);
  EXPECT_TRUE(polyhedron_equal(lattice_sup({a}).as_polyhedron(), a.as_polyhedron()));
  EXPECT_TRUE(polyhedron_equal(lattice_sup({UpperSet::universal(c), a}).as_polyhedron(), a.as_polyhedron()));
  auto s = lattice_sup({a, b});
  EXPECT_TRUE(polyhedron_equal(s.as_polyhedron(), embed_point({2, 0}, c).as_polyhedron()));
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) EXPECT_EQ(mem(s, {i, j}), i >= 2 && j >= 0);
  EXPECT_TRUE(lattice_sup({a, UpperSet::empty(c)}).is_empty());
}

TEST(Lattice, BoundsOnRandomFamilies) {
  auto c = orthant();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(-3, 3);
  auto rand_set = [&] { return embed_point({coord(rng), coord(rng)}, c); };
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<UpperSet> fam{rand_set(), rand_set(), rand_set()};
    auto inf = lattice_inf(fam);
    auto sup = lattice_sup(fam);
    for (const auto& s : fam) {
      EXPECT_TRUE(set_order_leq(inf, s).holds);
      EXPECT_TRUE(set_order_leq(s, sup).holds);
    }
    // Any candidate bound is comparable with inf/sup in the right direction.
    auto cand = rand_set();
    bool lower = true, upper = true;
    for (const auto& s : fam) {
      lower = lower && set_order_leq(cand, s).holds;
      upper = upper && set_order_leq(s, cand).holds;
    }
    if (lower) {
      EXPECT_TRUE(set_order_leq(cand, inf).holds);
    }
    if (upper) {
      EXPECT_TRUE(set_order_leq(sup, cand).holds);
    }
  }
}

TEST(Member, Examples) {
  auto c = orthant();
  EXPECT_TRUE(mem(embed_point({0, 0}, c), {0, 0}));
  EXPECT_FALSE(mem(UpperSet::empty(c), {0, 0}));
  auto par = parabola_set(c);
  EXPECT_FALSE(member(par, {0, make_rational(-1, 10)}, make_rational(1, 1000000000)));
  EXPECT_TRUE(member(par, {-1, 1}, 0));
  EXPECT_TRUE(member(par, {5, 0}, 0));
}

TEST(Parabola, SupportMatchesGridBruteForce) {
  // Max of a z1 + b z2 over boundary points of A + R^2_+ on a fine grid.
  for (auto [a, b] : std::vector<std::pair<int, int>>{{-1, -1}, {-2, -1}, {-1, -3}, {0, -1}}) {
    double best = -1e300;
    for (int k = -4000; k <= 0; ++k) {
      double s = k / 400.0;
      best = std::max(best, a * s + b * s * s);
    }
    Extended exact = parabola_support({a, b});
    ASSERT_TRUE(exact.is_finite());
    EXPECT_NEAR(exact.to_double(), best, 1e-4);
  }
  EXPECT_TRUE(parabola_support({-1, 0}).is_plus_infinity());
  EXPECT_TRUE(parabola_support({1, -1}).is_plus_infinity());
}

TEST(Parabola, DistanceMatchesSampling) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    double p1 = u(rng), p2 = u(rng);
    double brute = 1e300;
    for (int k = -40000; k <= 40000; ++k) {
      double t = k / 4000.0;
      double m = std::min(t, 0.0);
      brute = std::min(brute, std::hypot(t - p1, m * m - p2));
    }
    if (p2 >= std::pow(std::min(p1, 0.0), 2)) brute = 0;
    EXPECT_NEAR(parabola_distance(p1, p2), brute, 1e-3) << p1 << "," << p2;
  }
}

TEST(MinkowskiSum, Examples) {
  auto c = orthant();
  auto s = minkowski_sum(embed_point({1, 2}, c), embed_point({-3, 1}, c));
  EXPECT_TRUE(polyhedron_equal(s.as_polyhedron(), embed_point({-2, 3}, c).as_polyhedron()));
  EXPECT_TRUE(minkowski_sum(embed_point({1, 2}, c), UpperSet::empty(c)).is_empty());
  auto par = parabola_set(c);
  auto t = minkowski_sum(par, embed_point({1, 1}, c));
  for (const auto& d : par.support_grid()) {
    auto expect = par.support(d) + embed_point({1, 1}, c).support(d);
    EXPECT_EQ(t.support(d), expect);
  }
}

TEST(MinkowskiSum, MembersAdd) {
  auto c = orthant();
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = embed_point({coord(rng), coord(rng)}, c);
    auto b = upper_closure(Polyhedron::box({coord(rng), coord(rng)}, {3, 3}), c);
    Vec p{coord(rng), coord(rng)}, q{coord(rng), coord(rng)};
    if (mem(a, p) && mem(b, q)) {
      EXPECT_TRUE(mem(minkowski_sum(a, b), p + q));
    }
  }
}

TEST(Scale, Examples) {
  auto c = orthant();
  auto a = embed_point({1, 1}, c);
  EXPECT_TRUE(polyhedron_equal(scale(a, 1).as_polyhedron(), a.as_polyhedron()));
  EXPECT_TRUE(polyhedron_equal(scale(a, 0).as_polyhedron(), c->as_polyhedron()));
  EXPECT_TRUE(polyhedron_equal(scale(a, 2).as_polyhedron(), embed_point({2, 2}, c).as_polyhedron()));
  EXPECT_THROW(scale(a, -1), std::invalid_argument);
  auto par2 = scale(parabola_set(c), 2);
  EXPECT_EQ(par2.support({-1, -1}), Extended(make_rational(1, 2)));
  EXPECT_TRUE(*par2.contains_exact({-2, 2}));
  EXPECT_FALSE(*par2.contains_exact({-2, 1}));
}

TEST(EmbedPoint, OrderEmbedding) {
  auto c = orthant();
  EXPECT_TRUE(polyhedron_equal(embed_point({0, 0}, c).as_polyhedron(), c->as_polyhedron()));
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Vec z1{coord(rng), coord(rng)}, z2{coord(rng), coord(rng)};
    EXPECT_EQ(cone_contains(*c, z2 - z1), set_order_leq(embed_point(z1, c), embed_point(z2, c)).holds);
  }
  EXPECT_FALSE(cone_contains(*c, Vec{1, -1}));
  EXPECT_FALSE(set_order_leq(embed_point({0, 0}, c), embed_point({1, -1}, c)).holds);
}

TEST(UpperSet, RejectsNonUpperClosedPolyhedron) {
  auto c = orthant();
  EXPECT_THROW(UpperSet::from_polyhedron(Polyhedron(2, {{{-1, 0}, 0}}), c), std::invalid_argument);
}

TEST(UpperSet, MixedConesRejected) {
  EXPECT_THROW(set_order_leq(embed_point({0, 0}, orthant()), embed_point({0, 0}, ray())), std::invalid_argument);
}
