#include <gtest/gtest.h>

#include <random>

#include "upperset/corpus.hpp"
#include "upperset/germ.hpp"
#include "upperset/local_model.hpp"

using namespace upperset;

TEST(Germ, ArithmeticMatchesEvaluation) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-5, 5);
  auto random_germ = [&] {
    Germ g = Germ::linear(c(rng), c(rng));
    Germ h = Germ::linear(c(rng), c(rng));
    if (h.sign() == 0) h = Germ(1);
    return g / h;
  };
  Rational t = make_rational(1, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    Germ a = random_germ(), b = random_germ();
    EXPECT_EQ((a + b).at(t), a.at(t) + b.at(t));
    EXPECT_EQ((a * b).at(t), a.at(t) * b.at(t));
    if (b.sign() != 0 && sgn(b.at(t)) != 0) {
      EXPECT_EQ((a / b).at(t), a.at(t) / b.at(t));
    }
  }
}

TEST(Germ, OrderIsTheSignForSmallPositiveT) {
  EXPECT_GT(Germ::t(), Germ(0));
  EXPECT_LT(Germ::t(), Germ(make_rational(1, 1000000)));
  EXPECT_LT(Germ::linear(0, -1), Germ(0));
  // t^2 - t < 0 near 0+.
  Germ g = Germ::t() * Germ::t() - Germ::t();
  EXPECT_LT(g, Germ(0));
  EXPECT_EQ((Germ(1) / Germ::t()).limit(), Extended::plus_infinity());
  EXPECT_EQ((Germ::linear(2, 1) / Germ::linear(1, 3)).limit(), Extended(2));
  EXPECT_EQ((Germ::t() / Germ::linear(0, 4)).limit(), Extended(make_rational(1, 4)));
}

// The germ LP value agrees with the rational LP at a small concrete t.
TEST(GermLp, AgreesWithRationalLpAtSmallT) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> c(-3, 3), pos(0, 3);
  Rational t = make_rational(1, 100000);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    AffineHalfspaceBody a;
    for (int i = 0; i < 3; ++i) {
      a.normals.push_back({pos(rng), pos(rng)});
      a.offsets.push_back(c(rng));
      a.coupling.push_back({c(rng)});
    }
    a.normal_slopes = {Mat{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, {pos(rng), pos(rng)}}};
    Vec x0{make_rational(c(rng), 2)}, u{trial % 2 ? 1 : -1};
    Vec zstar{-pos(rng) - 1, -pos(rng)};
    auto glp = germ_value_lp(a, x0, u, 2);
    glp.objective = {Germ(zstar[0]), Germ(zstar[1])};
    auto gr = lp_solve(glp);
    Vec x = x0 + t * u;
    auto p = affine_value_polyhedron(a, x, 2);
    auto rr = lp_solve(zstar, p);
    ASSERT_EQ(gr.status, rr.status) << trial;
    if (rr.optimal()) {
      EXPECT_EQ(gr.value.at(t), rr.value) << trial;
      ++compared;
    }
  }
  EXPECT_GT(compared, 5);
}

TEST(SideModel, CorpusSides) {
  auto tilted = tilted_halfspace_map();
  auto c = tilted.cone_ptr();
  auto right = side_model(tilted, {0}, {1});
  EXPECT_EQ(right.kind, SideModel::Kind::affine);
  EXPECT_FALSE(right.empty);
  EXPECT_FALSE(right.limit);
  // σ of {z1 + t z2 >= 1 + t} is finite only along -(1, t): +∞ in the limit for (-1,-1).
  EXPECT_TRUE(side_support_limit(right, {0}, {-1, -1}, *c).is_plus_infinity());
  auto left = side_model(tilted, {0}, {-1});
  ASSERT_TRUE(left.limit);
  EXPECT_EQ(side_support_limit(left, {0}, {-1, -1}, *c), Extended(0));

  auto sw = switched_cone_map();
  EXPECT_TRUE(side_model(sw, {0}, {-1}).empty);
  EXPECT_FALSE(side_model(sw, {0}, {1}).empty);

  auto par = scaled_parabola_map();
  auto up = side_model(par, {1}, {1}), down = side_model(par, {1}, {-1});
  EXPECT_EQ(up.lower_h, Tri::yes);
  EXPECT_EQ(up.upper_h, Tri::unknown);
  EXPECT_EQ(down.upper_h, Tri::yes);
  EXPECT_EQ(down.lower_h, Tri::unknown);
  auto at0 = side_model(par, {0}, {1});
  EXPECT_FALSE(at0.limit);
  EXPECT_TRUE(side_support_limit(at0, {0}, {-1, 0}, *c).is_plus_infinity());
  EXPECT_EQ(side_support_limit(at0, {0}, {-1, -1}, *c), Extended(0));
}
