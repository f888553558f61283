#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "upperset/continuity.hpp"
#include "upperset/corpus.hpp"

using namespace upperset;

namespace {

void expect_status(const VerdictMatrix& vm, Notion n, Status s, const std::string& what) {
  EXPECT_EQ(vm[n].status, s) << what << " " << to_string(n) << ": " << vm[n].basis;
}

void expect_witnesses_reverify(const SetValuedMap& f, const Vec& x0, const VerdictMatrix& vm) {
  for (auto n : all_notions()) {
    const auto& v = vm[n];
    if (v.status != Status::fails) continue;
    ASSERT_TRUE(v.witness) << to_string(n);
    EXPECT_TRUE(reverify(f, x0, *v.witness)) << f.name() << " " << to_string(n) << " " << v.witness->kind;
  }
}

DirectionBase unit_base() {
  return DirectionBase(orthant_cone(), {{-1, 0}, {0, -1}, {make_rational(-3, 5), make_rational(-4, 5)},
                                        {make_rational(-4, 5), make_rational(-3, 5)}});
}

// f(x) = R^2_+ for x1 >= 0 and ∅ otherwise, on R^2: neither polyhedral nor one-dimensional.
SetValuedMap switched_plane_map() {
  auto c = orthant_cone();
  return SetValuedMap(2, c, guarded({1, 0}, 0, false, cone_body(*c, 2), empty_body(2, 2)), "switched-plane");
}

}  // namespace

TEST(Continuity, RayTranslateMap) {
  auto f = ray_translate_map();
  for (int x : {-1, 0, 2}) {
    auto vm = verdict_matrix(f, {x});
    std::string what = "ex-3.15 at " + std::to_string(x);
    expect_status(vm, Notion::hlc, Status::holds, what);
    expect_status(vm, Notion::lc, Status::holds, what);
    expect_status(vm, Notion::eff, Status::holds, what);
    expect_status(vm, Notion::uls, Status::fails, what);
    expect_status(vm, Notion::lba, Status::fails, what);
    expect_status(vm, Notion::graph_interior, Status::fails, what);
    EXPECT_TRUE(vm.artifacts.empty());
    expect_witnesses_reverify(f, {x}, vm);
  }
}

TEST(Continuity, SwitchedConeMap) {
  auto f = switched_cone_map();
  auto vm = verdict_matrix(f, {0});
  expect_status(vm, Notion::uc, Status::holds, "ex-3.16");
  expect_status(vm, Notion::eff, Status::fails, "ex-3.16");
  expect_status(vm, Notion::lc, Status::fails, "ex-3.16");
  expect_status(vm, Notion::lba, Status::fails, "ex-3.16");
  expect_status(vm, Notion::graph_interior, Status::fails, "ex-3.16");
  EXPECT_NE(vm[Notion::uc].basis.find("enlargement base"), std::string::npos);
  EXPECT_TRUE(vm.artifacts.empty());
  expect_witnesses_reverify(f, {0}, vm);
}

TEST(Continuity, ScaledParabolaAtOne) {
  auto f = scaled_parabola_map();
  auto vm = verdict_matrix(f, {1});
  for (auto n : {Notion::uls, Notion::lls}) expect_status(vm, n, Status::holds, "ex-3.17");
  for (auto n : {Notion::uc, Notion::huc, Notion::hlc}) expect_status(vm, n, Status::fails, "ex-3.17");
  EXPECT_TRUE(vm.artifacts.empty());
  expect_witnesses_reverify(f, {1}, vm);
  auto u = check_uniform(f, {1}, unit_base(), CheckerConfig{}, SemiMode::usc);
  EXPECT_EQ(u.status, Status::fails);
  ASSERT_TRUE(u.witness);
  EXPECT_TRUE(reverify(f, {1}, *u.witness));
}

TEST(Continuity, ScaledParabolaScalarAtZero) {
  auto f = scaled_parabola_map();
  DirectionBase b(orthant_cone(), {{-1, 0}});
  auto v = check_scalar_semicontinuity(f, {0}, b, CheckerConfig{}, SemiMode::lsc);
  ASSERT_EQ(v.status, Status::fails) << v.basis;
  EXPECT_TRUE(reverify(f, {0}, *v.witness));
}

TEST(Continuity, TiltedHalfspaceMap) {
  auto f = tilted_halfspace_map();
  auto vm = verdict_matrix(f, {0});
  expect_status(vm, Notion::lc, Status::fails, "tilted");
  expect_status(vm, Notion::cminus_usc, Status::holds, "tilted");
  EXPECT_TRUE(vm.artifacts.empty());
  expect_witnesses_reverify(f, {0}, vm);
  auto usc = check_scalar_semicontinuity(f, {0}, default_base(f, CheckerConfig{}), CheckerConfig{}, SemiMode::usc);
  EXPECT_EQ(usc.status, Status::holds);
}

// Independent oracle: for x > 0, f(x) is the halfspace {z1 + x z2 >= 1 + x}, at
// distance max(0, 1 + x - z1 - x z2)/sqrt(1 + x^2) from z.
TEST(Continuity, TiltedDistanceWitnessMatchesClosedForm) {
  auto f = tilted_halfspace_map();
  auto v = check_lc(f, {0});
  ASSERT_EQ(v.status, Status::fails);
  const auto& w = *v.witness;
  ASSERT_EQ(w.kind, "distance");
  ASSERT_TRUE(w.radius);
  double z1 = w.z[0].get_d(), z2 = w.z[1].get_d();
  for (const auto& x : w.sequence) {
    double t = x[0].get_d();
    ASSERT_GT(t, 0);
    double d = std::max(0.0, 1 + t - z1 - t * z2) / std::sqrt(1 + t * t);
    EXPECT_GT(d, w.radius->get_d());
  }
}

TEST(Continuity, ConstantMapHoldsEverywhere) {
  auto c = orthant_cone();
  auto f = constant_map(c->as_polyhedron(), c);
  for (int x : {-3, 0, 5}) {
    auto vm = verdict_matrix(f, {x});
    for (auto n : all_notions()) expect_status(vm, n, Status::holds, "constant");
  }
  auto u = check_uniform(f, {0}, unit_base(), CheckerConfig{}, SemiMode::usc);
  EXPECT_EQ(u.status, Status::holds);
}

TEST(Continuity, GraphInteriorWitness) {
  auto c = orthant_cone();
  auto f = constant_map(c->as_polyhedron(), c);
  auto v = graph_interior_witness(f, {2});
  ASSERT_EQ(v.status, Status::holds);
  ASSERT_TRUE(v.witness && v.witness->radius);
  EXPECT_GT(*v.witness->radius, 0);
  EXPECT_TRUE(c->contains(v.witness->z));
  EXPECT_EQ(graph_interior_witness(switched_cone_map(), {0}).status, Status::fails);
  EXPECT_EQ(graph_interior_witness(ray_translate_map(), {1}).status, Status::fails);
}

TEST(Continuity, BoundedNeighborhoodCondition) {
  EXPECT_EQ(check_bn(Cone::nonnegative_orthant(2), 10).status, Status::holds);
  EXPECT_EQ(check_bn(*vertical_ray_cone(), 10).status, Status::holds);
  EXPECT_EQ(check_bn(Cone::nonnegative_orthant(2), 0).status, Status::inconclusive);
}

TEST(Continuity, UncertifiedBaseIsInconclusive) {
  auto f = scaled_parabola_map();
  DirectionBase half(orthant_cone(), {{-1, 0}});
  EXPECT_EQ(check_uniform(f, {1}, half, CheckerConfig{}, SemiMode::usc).status, Status::inconclusive);
}

// Outside both exact engines only falsifiers run, so nothing may be claimed to hold.
TEST(Continuity, GeneralMapNeverClaimsWithoutCertificate) {
  auto f = switched_plane_map();
  auto vm = verdict_matrix(f, {0, 0});
  expect_status(vm, Notion::lc, Status::fails, "switched-plane");
  expect_status(vm, Notion::eff, Status::fails, "switched-plane");
  for (auto n : all_notions()) EXPECT_NE(vm[n].status, Status::holds) << to_string(n);
  expect_witnesses_reverify(f, {0, 0}, vm);
}

TEST(Continuity, ThreadCountDoesNotChangeVerdicts) {
  CheckerConfig one, many;
  one.threads = 1;
  many.threads = 8;
  for (const auto& [f, x] : std::vector<std::pair<SetValuedMap, Vec>>{
           {scaled_parabola_map(), {1}}, {tilted_halfspace_map(), {0}}, {switched_cone_map(), {0}}}) {
    auto a = verdict_matrix(f, x, one), b = verdict_matrix(f, x, many);
    for (auto n : all_notions()) EXPECT_EQ(a[n].status, b[n].status) << f.name() << " " << to_string(n);
  }
}

// Exact decisions on polyhedral graphs against the sampling falsifiers: a
// certified holds must never be refuted, and every fails carries a witness.
TEST(Continuity, PolyhedralExactAgreesWithSampling) {
  std::mt19937_64 rng(77);
  CheckerConfig cfg;
  for (int trial = 0; trial < 16; ++trial) {
    auto f = random_affine_map(rng, 1 + trial % 2);
    auto x = random_point(rng, f.domain_dim());
    auto base = default_base(f, cfg);
    auto a = analyze(f, x, cfg, base.directions());
    auto vm = verdict_matrix(f, x, cfg);
    if (vm[Notion::huc].status == Status::holds) {
      EXPECT_FALSE(support_excess(a, Excess::up));
      EXPECT_FALSE(membership_escape(a, 2));
    }
    if (vm[Notion::lc].status == Status::holds && !a.empty0()) {
      EXPECT_FALSE(empty_sequence(a, 2));
      EXPECT_FALSE(distance_gap(a, 2));
    }
    if (vm[Notion::hlc].status == Status::holds) {
      EXPECT_FALSE(support_excess(a, Excess::down));
    }
    if (vm[Notion::lba].status == Status::holds) {
      EXPECT_FALSE(no_common_point(a, false));
    }
    if (vm[Notion::graph_interior].status == Status::holds) {
      EXPECT_FALSE(no_common_point(a, true));
    }
    for (auto n : all_notions()) EXPECT_TRUE(vm[n].decisive()) << to_string(n);
    EXPECT_TRUE(vm.artifacts.empty());
    expect_witnesses_reverify(f, x, vm);
  }
}

// On a convex map a property at x0 in dom f holds on Int(dom f).
TEST(Continuity, PropagationToInteriorPoints) {
  std::mt19937_64 rng(91);
  CheckerConfig cfg;
  cfg.levels = 6;
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_affine_map(rng, 1 + trial % 2);
    auto dom = domain_polyhedron(f);
    auto x0 = random_point(rng, f.domain_dim());
    if (!dom.contains(x0)) continue;
    for (auto n : {Notion::lba, Notion::eff, Notion::uls, Notion::lc}) {
      if (check_notion(f, x0, n, cfg).status != Status::holds) continue;
      for (int s = 0; s < 3; ++s) {
        auto x = random_point(rng, f.domain_dim());
        if (!interior_of_polyhedron(dom, x)) continue;
        EXPECT_EQ(check_notion(f, x, n, cfg).status, Status::holds) << to_string(n) << " at " << to_string(x);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Continuity, ReverifyRejectsTamperedWitness) {
  auto f = tilted_halfspace_map();
  auto v = check_lc(f, {0});
  ASSERT_EQ(v.status, Status::fails);
  auto w = *v.witness;
  w.radius = Rational(5);
  EXPECT_FALSE(reverify(f, {0}, w));
  w = *v.witness;
  w.sequence.pop_back();
  EXPECT_FALSE(reverify(f, {0}, w));
  w = *v.witness;
  w.z = {-1, 0};
  EXPECT_FALSE(reverify(f, {0}, w));
}

TEST(Continuity, NotionNamesRoundTrip) {
  for (auto n : all_notions()) EXPECT_EQ(notion_from_string(to_string(n)), n);
  EXPECT_THROW(notion_from_string("bogus"), std::invalid_argument);
  CheckerConfig bad;
  bad.rho = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}
