#include <gtest/gtest.h>

#include <random>

#include "upperset/lp.hpp"
#include "upperset/polyhedron.hpp"

using namespace upperset;

namespace {

Polyhedron interval(long lo, long hi) {
  return Polyhedron(1, {{{1}, lo}, {{-1}, -hi}});
}

}  // namespace

TEST(LpSolve, BoundedInterval) {
  auto r = lp_solve(Vec{1}, interval(0, 1));
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.point[0], 1);
}

TEST(LpSolve, Unbounded) {
  Polyhedron p(1, {{{1}, 0}});
  EXPECT_EQ(lp_solve(Vec{1}, p).status, LpStatus::unbounded);
}

TEST(LpSolve, Infeasible) {
  EXPECT_EQ(lp_solve(Vec{1}, interval(1, 0)).status, LpStatus::infeasible);
}

TEST(LpSolve, EqualityAndNegativeRhs) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {make_rational(-1), make_rational(-1)};
  lp.add({1, 1}, Sense::equal, -3);
  lp.add({1, 0}, Sense::greater_equal, -5);
  lp.add({0, 1}, Sense::greater_equal, -5);
  auto r = lp_solve(lp);
  ASSERT_TRUE(r.optimal());
  EXPECT_EQ(r.value, 3);
}

TEST(LpSolve, DegenerateCyclingInstanceTerminates) {
  // Beale's classic cycling example (maximization form).
  LinearProgram lp;
  lp.num_vars = 4;
  lp.objective = {make_rational(3, 4), make_rational(-150), make_rational(1, 50), make_rational(-6)};
  lp.add({make_rational(1, 4), make_rational(-60), make_rational(-1, 25), make_rational(9)}, Sense::less_equal, 0);
  lp.add({make_rational(1, 2), make_rational(-90), make_rational(-1, 50), make_rational(3)}, Sense::less_equal, 0);
  lp.add({0, 0, 1, 0}, Sense::less_equal, 1);
  for (std::size_t i = 0; i < 4; ++i) lp.add(unit_vector(4, i), Sense::greater_equal, 0);
  auto r = lp_solve(lp);
  ASSERT_TRUE(r.optimal());
  EXPECT_EQ(r.value, make_rational(1, 20));
}

TEST(SupportValue, Examples) {
  Polyhedron orthant(2, {{{1, 0}, 0}, {{0, 1}, 0}});
  EXPECT_EQ(support_value(orthant, {-1, -1}), Extended(0));
  Polyhedron diag(2, {{{1, 1}, 2}});
  EXPECT_EQ(support_value(diag, {-1, -1}), Extended(-2));
  EXPECT_TRUE(support_value(Polyhedron::empty(2), {-1, -1}).is_minus_infinity());
  EXPECT_TRUE(support_value(diag, {-1, 0}).is_plus_infinity());
}

TEST(SupportValue, GridBruteForceAgrees) {
  // max of -(z1+z2) over {z1+z2 >= 2} ∩ [-10,10]^2 on a lattice reaches -2.
  Polyhedron diag(2, {{{1, 1}, 2}});
  Rational best = -1000;
  for (int i = -40; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      Vec z{make_rational(i, 4), make_rational(j, 4)};
      if (diag.contains(z)) best = std::max(best, Rational(-(z[0] + z[1])));
    }
  EXPECT_EQ(Extended(best), support_value(diag, {-1, -1}));
}

// Strong duality of every bounded feasible random instance, checked exactly.
TEST(LpSolve, DualCertificateMatchesPrimal) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    LinearProgram lp;
    lp.num_vars = 3;
    for (int j = 0; j < 3; ++j) lp.objective.push_back(coef(rng));
    for (int i = 0; i < 6; ++i) {
      Vec row;
      for (int j = 0; j < 3; ++j) row.push_back(coef(rng));
      Sense s = static_cast<Sense>(i % 3);
      lp.add(row, s, coef(rng));
    }
    auto r = lp_solve(lp);
    if (!r.optimal()) continue;
    ++checked;
    Rational dual_value = 0;
    Vec aty = zeros(3);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const auto& row = lp.rows[i];
      dual_value += row.rhs * r.duals[i];
      for (int j = 0; j < 3; ++j) aty[j] += row.coeffs[j] * r.duals[i];
      if (row.sense == Sense::less_equal) {
        EXPECT_GE(sgn(r.duals[i]), 0);
      }
      if (row.sense == Sense::greater_equal) {
        EXPECT_LE(sgn(r.duals[i]), 0);
      }
      if (row.sense == Sense::less_equal) {
        EXPECT_LE(dot(row.coeffs, r.point), row.rhs);
      }
      if (row.sense == Sense::greater_equal) {
        EXPECT_GE(dot(row.coeffs, r.point), row.rhs);
      }
      if (row.sense == Sense::equal) {
        EXPECT_EQ(dot(row.coeffs, r.point), row.rhs);
      }
    }
    EXPECT_EQ(aty, lp.objective);
    EXPECT_EQ(dual_value, r.value);
  }
  EXPECT_GT(checked, 10);
}

TEST(Polyhedron, VertexRoundTripAndMinkowski) {
  auto seg = Polyhedron::box({0, 0}, {1, 0});
  auto v = to_vrep(seg);
  EXPECT_EQ(v.points.size(), 2u);
  EXPECT_TRUE(polyhedron_equal(to_hrep(v), seg));
  Polyhedron ray_cone(2, {{{1, 0}, 0}, {{-1, 0}, 0}, {{0, 1}, 0}});
  auto sum = minkowski_sum(seg, ray_cone);
  EXPECT_TRUE(polyhedron_equal(sum, Polyhedron(2, {{{1, 0}, 0}, {{-1, 0}, -1}, {{0, 1}, 0}})));
}

TEST(Polyhedron, ProjectionEliminatesCoordinate) {
  // {(x,z) : z >= x, z >= -x} projected onto z is {z >= 0}.
  Polyhedron p(2, {{{-1, 1}, 0}, {{1, 1}, 0}});
  auto q = project(p, {1});
  EXPECT_TRUE(polyhedron_equal(q, Polyhedron(1, {{{1}, 0}})));
}
