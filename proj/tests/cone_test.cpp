#include <gtest/gtest.h>

#include <random>

#include "upperset/cone.hpp"

using namespace upperset;

namespace {

// z* ∈ C^- iff z*·g <= 0 on every generator; probe a rational grid of z*.
void expect_dual_matches_bruteforce(const Cone& c) {
  Cone d = dual_cone(c);
  for (int i = -6; i <= 6; ++i)
    for (int j = -6; j <= 6; ++j) {
      Vec zs{make_rational(i, 2), make_rational(j, 3)};
      bool brute = true;
      for (const auto& g : c.generators())
        if (sgn(dot(zs, g)) > 0) brute = false;
      EXPECT_EQ(d.contains(zs), brute) << i << "," << j;
    }
}

Cone ray_cone() { return Cone::from_generators(2, {{0, 1}}); }

}  // namespace

TEST(Cone, OrthantDualIsNegativeOrthant) {
  auto c = Cone::nonnegative_orthant(2);
  auto d = dual_cone(c);
  EXPECT_EQ(d, Cone::from_generators(2, {{-1, 0}, {0, -1}}));
  EXPECT_TRUE(c.has_interior());
  EXPECT_TRUE(c.pointed());
  expect_dual_matches_bruteforce(c);
}

TEST(Cone, RayDualIsHalfplane) {
  auto c = ray_cone();
  auto d = dual_cone(c);
  EXPECT_TRUE(d.contains({5, -1}));
  EXPECT_TRUE(d.contains({-5, 0}));
  EXPECT_FALSE(d.contains({0, 1}));
  EXPECT_FALSE(c.has_interior());
  expect_dual_matches_bruteforce(c);
}

TEST(Cone, TwoRayDual) {
  auto c = Cone::from_generators(2, {{1, 0}, {1, 1}});
  auto d = dual_cone(c);
  // Halfspace form {z* : z*·(1,0) <= 0, z*·(1,1) <= 0}.
  EXPECT_EQ(d, Cone::from_generators(2, {{0, -1}, {-1, 1}}));
  EXPECT_FALSE(d.contains({1, -1}));
  expect_dual_matches_bruteforce(c);
}

TEST(Cone, Contains) {
  EXPECT_TRUE(cone_contains(Cone::nonnegative_orthant(2), {0, 0}));
  EXPECT_TRUE(cone_contains(ray_cone(), {0, 3}));
  EXPECT_FALSE(cone_contains(ray_cone(), {1, 0}));
  EXPECT_THROW(cone_contains(ray_cone(), {1, 0, 0}), std::invalid_argument);
}

TEST(Cone, WholeSpaceRejected) {
  EXPECT_THROW(Cone::from_generators(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), std::invalid_argument);
  EXPECT_THROW(Cone::from_generators(2, {{0, 0}}), std::invalid_argument);
}

TEST(Cone, DualInvolutionOnRandomCones) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t m = 2 + trial % 2;
    Mat gens;
    for (int k = 0; k < 3; ++k) {
      Vec g;
      for (std::size_t i = 0; i < m; ++i) g.push_back(coef(rng));
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.empty()) continue;
    try {
      auto c = Cone::from_generators(m, gens);
      auto dd = dual_cone(dual_cone(c));
      EXPECT_EQ(dd, c);
    } catch (const std::invalid_argument&) {
      // whole-space cones are outside the model
    }
  }
}
