#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "upperset/corpus.hpp"

using namespace upperset;

TEST(Corpus, BuiltinsCoverExamplesAndSynthetics) {
  auto all = builtin_fixtures();
  std::set<std::string> ids;
  for (const auto& f : all) ids.insert(f.id);
  EXPECT_EQ(ids.size(), all.size());
  for (const char* id : {"ex-3.15", "ex-3.16", "ex-3.17", "ex-3.20", "dual-abs", "random-affine", "random-bivariate"})
    EXPECT_TRUE(ids.count(id)) << id;
  EXPECT_FALSE(find_fixture("no-such-fixture"));
}

TEST(Corpus, LabelsAreReproduced) {
  for (const auto& fx : builtin_fixtures()) {
    if (!fx.map) continue;
    for (const auto& pt : fx.points)
      for (const auto& [notion, status] : pt.labels) {
        auto v = check_notion(*fx.map, pt.x0, notion);
        EXPECT_EQ(v.status, status) << fx.id << " at " << to_string(pt.x0) << " " << to_string(notion) << ": " << v.basis;
      }
  }
}

TEST(Corpus, DualityFixturesBehaveAsExpected) {
  for (const auto& fx : builtin_fixtures()) {
    if (!fx.bivariate || fx.id == "random-bivariate") continue;
    auto base = DirectionBase::fan(fx.bivariate->f.cone_ptr(), 8);
    auto rep = fundamental_duality(*fx.bivariate, fx.duality->x0, base);
    EXPECT_EQ(rep.applied, fx.duality->regular) << fx.id << " " << rep.diagnostic;
    if (rep.applied) {
      EXPECT_EQ(rep.exact_equal, std::optional<bool>(true)) << fx.id;
    }
  }
}

TEST(Corpus, SeededGeneratorsAreDeterministic) {
  auto a = random_affine_fixture(3), b = random_affine_fixture(3);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].x0, b.points[i].x0);
  const auto& ba = std::get<AffineHalfspaceBody>(a.map->body());
  const auto& bb = std::get<AffineHalfspaceBody>(b.map->body());
  EXPECT_EQ(ba.normals, bb.normals);
  EXPECT_EQ(ba.offsets, bb.offsets);
}

TEST(ParabolaCertificate, KnownValues) {
  // ε = 1: t = 2 gives 4 > 17 false, t = 3 gives 81 > 37; 9/√37 ≈ 1.4796.
  auto c1 = parabola_separation_certificate(1);
  EXPECT_EQ(c1.t, 3);
  EXPECT_NEAR(c1.formula, 9 / std::sqrt(37.0), 1e-12);
  // ε = 1/10: t⁴ > 100 + 400 t² first holds at t = 21.
  auto c01 = parabola_separation_certificate(parse_rational("0.1"));
  EXPECT_EQ(c01.t, 21);
  // ε = 1/2: t⁴ > 4 + 16 t² first holds at t = 5.
  EXPECT_EQ(parabola_separation_certificate(make_rational(1, 2)).t, 5);
  // t = 25 also works for ε = 0.1: 62.5/√2501 ≈ 1.2497.
  EXPECT_GT(parabola_formula(parse_rational("0.1"), 25), 1.0);
  EXPECT_NEAR(parabola_formula(parse_rational("0.1"), 25), 62.5 / std::sqrt(2501.0), 1e-12);
}

TEST(ParabolaCertificate, DistanceExceedsOneAndFormulaGrows) {
  for (const char* e : {"0.1", "0.5", "1"}) {
    auto eps = parse_rational(e);
    auto c = parabola_separation_certificate(eps);
    EXPECT_TRUE(c.exact);
    EXPECT_GT(c.formula, 1.0) << e;
    EXPECT_GT(c.distance, 1.0 + 1e-6) << e;
    // the tangent distance bounds the true distance from below
    EXPECT_GE(c.distance + 1e-9, c.formula) << e;
    double prev = 0;
    for (long t = 1; t <= 200; ++t) {
      double v = parabola_formula(eps, t);
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
  EXPECT_THROW(parabola_separation_certificate(0), std::invalid_argument);
}
