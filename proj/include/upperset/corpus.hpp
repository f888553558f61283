#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <random>

#include "upperset/cone.hpp"
#include "upperset/continuity.hpp"
#include "upperset/duality.hpp"
#include "upperset/parabola.hpp"
#include "upperset/piecewise_linear.hpp"
#include "upperset/setmap.hpp"

namespace upperset {

inline std::shared_ptr<const Cone> orthant_cone(std::size_t m = 2) {
  return std::make_shared<const Cone>(Cone::nonnegative_orthant(m));
}

// {z : z1 = 0, z2 >= 0}.
inline std::shared_ptr<const Cone> vertical_ray_cone() {
  return std::make_shared<const Cone>(Cone::from_generators(2, {{0, 1}}));
}

// f(x) = {(x, 0)} + C with C the vertical ray.
inline SetValuedMap ray_translate_map() {
  auto c = vertical_ray_cone();
  return SetValuedMap(1, c, affine_body({{1, 0}, {-1, 0}, {0, 1}}, {0, 0, 0}, {{1}, {-1}, {0}}), "ex-3.15");
}

// f(x) = C for x >= 0 and ∅ for x < 0, with C = R^2_+.
inline SetValuedMap switched_cone_map() {
  auto c = orthant_cone();
  return SetValuedMap(1, c, guarded({1}, 0, false, cone_body(*c, 1), empty_body(1, 2)), "ex-3.16");
}

// f(x) = xA + R^2_+ for x >= 0 and ∅ for x < 0, A the parabola.
inline SetValuedMap scaled_parabola_map() {
  auto c = orthant_cone();
  ScaledBaseBody s{parabola_set(c), {1}, 0};
  return SetValuedMap(1, c, guarded({1}, 0, false, s, empty_body(1, 2)), "ex-3.17");
}

// f(x) = {z : z1 + x z2 >= 1 + x} for x > 0 and R^2_+ for x <= 0.
inline SetValuedMap tilted_halfspace_map() {
  auto c = orthant_cone();
  AffineHalfspaceBody tilted{{{1, 0}}, {1}, {{1}}, {Mat{{0, 1}}}};
  return SetValuedMap(1, c, guarded({1}, 0, true, tilted, cone_body(*c, 1)), "ex-3.20");
}

// f(x) = {z : z >= -|x|} over C = R_+; not convex.
inline SetValuedMap concave_kink_map() {
  auto c = orthant_cone(1);
  return SetValuedMap(1, c, guarded({1}, 0, false, affine_body({{1}}, {0}, {{-1}}), affine_body({{1}}, {0}, {{1}})),
                      "concave-kink");
}

inline SetValuedMap constant_map(const Polyhedron& p, std::shared_ptr<const Cone> c, std::size_t n = 1) {
  auto body = constant_body(p, n);
  return SetValuedMap(n, std::move(c), std::move(body), "constant");
}

// Random closed proper convex PL function on R^n: 1-4 integer affine pieces on a
// domain that is R^n, a box, or a pair of halfspaces through a common point.
inline ConvexPL random_convex_pl(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> slope(-3, 3), off(-4, 4), count(1, 4), kind(0, 2), width(1, 4);
  ConvexPL f;
  f.dim = n;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Vec s;
    for (std::size_t j = 0; j < n; ++j) s.push_back(slope(rng));
    f.pieces.push_back({s, off(rng)});
  }
  Vec center;
  for (std::size_t j = 0; j < n; ++j) center.push_back(off(rng) / 2);
  switch (kind(rng)) {
    case 0:
      f.domain = Polyhedron::whole_space(n);
      break;
    case 1: {
      Vec lo, hi;
      for (std::size_t j = 0; j < n; ++j) {
        lo.push_back(center[j] - width(rng));
        hi.push_back(center[j] + width(rng));
      }
      f.domain = Polyhedron::box(lo, hi);
      break;
    }
    default: {
      std::vector<Halfspace> hs;
      for (int i = 0; i < 2; ++i) {
        Vec a;
        for (std::size_t j = 0; j < n; ++j) a.push_back(slope(rng));
        if (is_zero(a)) a = unit_vector(n, 0);
        hs.push_back({a, dot(a, center)});
      }
      f.domain = Polyhedron(n, std::move(hs));
    }
  }
  return f;
}

// Random map x -> {z : N z >= q + L x} over R^m_+ with N >= 0, 2-4 rows.
inline SetValuedMap random_affine_map(std::mt19937_64& rng, std::size_t n, std::size_t m = 2) {
  std::uniform_int_distribution<int> nonneg(0, 2), coef(-2, 2), off(-3, 3), rows(2, 4);
  Mat normals, coupling;
  Vec offsets;
  const int k = rows(rng);
  for (int i = 0; i < k; ++i) {
    Vec nrow, lrow;
    for (std::size_t j = 0; j < m; ++j) nrow.push_back(nonneg(rng));
    for (std::size_t j = 0; j < n; ++j) lrow.push_back(coef(rng));
    normals.push_back(std::move(nrow));
    coupling.push_back(std::move(lrow));
    offsets.push_back(off(rng));
  }
  return SetValuedMap(n, orthant_cone(m), affine_body(std::move(normals), std::move(offsets), std::move(coupling)),
                      "random-affine");
}

// Random point of [-2, 2]^n on the lattice (1/2) Z^n, so that domain
// boundaries are hit with positive probability.
inline Vec random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-4, 4);
  Vec x;
  for (std::size_t j = 0; j < n; ++j) x.push_back(make_rational(c(rng), 2));
  return x;
}

// z_j >= max of 1-3 random affine pieces in (x, y) per component; finite everywhere, so
// (x, 0) is in the domain for every x.
inline BivariateMap random_bivariate_map(std::mt19937_64& rng, std::size_t m = 2) {
  std::uniform_int_distribution<int> coef(-2, 2), off(-3, 3), rows(1, 3);
  Mat normals, coupling;
  Vec offsets;
  for (std::size_t j = 0; j < m; ++j) {
    const int k = rows(rng);
    for (int i = 0; i < k; ++i) {
      normals.push_back(unit_vector(m, j));
      coupling.push_back(Vec{coef(rng), coef(rng)});
      offsets.push_back(off(rng));
    }
  }
  return BivariateMap(SetValuedMap(2, orthant_cone(m), affine_body(std::move(normals), std::move(offsets), std::move(coupling)),
                                   "random-bivariate"),
                      1, 1);
}

// z >= |x| + |x - y| over C = R_+.
inline BivariateMap abs_marginal_map() {
  Mat normals(4, Vec{1});
  return BivariateMap(SetValuedMap(2, orthant_cone(1), affine_body(normals, zeros(4), {{2, -1}, {0, 1}, {0, -1}, {-2, 1}}),
                                   "dual-abs"),
                      1, 1);
}

// z >= max(y, -2y, 1 - y), independent of x.
inline BivariateMap pl_of_y_map() {
  Mat normals(3, Vec{1});
  return BivariateMap(
      SetValuedMap(2, orthant_cone(1), affine_body(normals, {0, 0, 1}, {{0, 1}, {0, -2}, {0, -1}}), "dual-q"), 1, 1);
}

// (|x| + |x - y|, |y|) + R^2_+.
inline BivariateMap abs_pair_map() {
  Mat normals{{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}};
  Mat coupling{{2, -1}, {0, 1}, {0, -1}, {-2, 1}, {0, 1}, {0, -1}};
  return BivariateMap(SetValuedMap(2, orthant_cone(2), affine_body(normals, zeros(6), coupling), "dual-pair"), 1, 1);
}

// dual-abs cut to y <= 0: the y-slice scalarization jumps to +inf right of 0.
inline BivariateMap cut_marginal_map() {
  Mat normals{{1}, {1}, {1}, {1}, {0}};
  Mat coupling{{2, -1}, {0, 1}, {0, -1}, {-2, 1}, {0, 1}};
  return BivariateMap(SetValuedMap(2, orthant_cone(1), affine_body(normals, zeros(5), coupling), "dual-cut"), 1, 1);
}

struct PointLabels {
  Vec x0;
  std::vector<std::pair<Notion, Status>> labels;
};

struct DualityExpectation {
  Vec x0;
  bool regular = true;  // false: the pipeline must refuse
};

struct Fixture {
  std::string id;
  std::optional<SetValuedMap> map;
  std::optional<BivariateMap> bivariate;
  std::vector<PointLabels> points;
  std::optional<DualityExpectation> duality;
  std::string notes;
};

inline Fixture map_fixture(std::string id, SetValuedMap f, std::vector<PointLabels> points, std::string notes) {
  return {std::move(id), std::move(f), std::nullopt, std::move(points), std::nullopt, std::move(notes)};
}

inline Fixture duality_fixture(BivariateMap b, bool regular, std::string notes) {
  std::string id = b.f.name();
  return {std::move(id), std::nullopt, std::move(b), {}, DualityExpectation{Vec{0}, regular}, std::move(notes)};
}

inline Fixture random_affine_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto f = random_affine_map(rng, 1);
  std::vector<PointLabels> pts;
  for (int k = 0; k < 5; ++k) pts.push_back({random_point(rng, 1), {}});
  return map_fixture("random-affine", std::move(f), std::move(pts), "seeded random convex map, no labels");
}

inline Fixture random_bivariate_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto fx = duality_fixture(random_bivariate_map(rng), true, "seeded random bivariate map, finite everywhere");
  return fx;
}

// Labels are the claims stated for each example; unlabeled notions are left to the checkers.
inline std::vector<Fixture> builtin_fixtures(std::uint64_t seed = 7) {
  using N = Notion;
  const auto H = Status::holds, F = Status::fails;
  std::vector<Fixture> out;
  std::vector<PointLabels> translate;
  for (long x : {-1, 0, 2}) translate.push_back({Vec{x}, {{N::hlc, H}, {N::uls, F}}});
  out.push_back(map_fixture("ex-3.15", ray_translate_map(), translate,
                            "convex and Hausdorff lower continuous, not upper lattice-semicontinuous, at every point"));
  out.push_back(map_fixture("ex-3.16", switched_cone_map(), {{Vec{0}, {{N::uc, H}, {N::eff, F}}}},
                            "convex and upper continuous at 0, not efficient at 0"));
  out.push_back(map_fixture("ex-3.17", scaled_parabola_map(),
                            {{Vec{1}, {{N::uls, H}, {N::lls, H}, {N::huc, F}, {N::hlc, F}}}},
                            "upper and lower lattice-semicontinuous at 1, neither Hausdorff upper nor lower continuous"));
  out.push_back(map_fixture("ex-3.20", tilted_halfspace_map(), {{Vec{0}, {{N::lc, F}, {N::cminus_usc, H}}}},
                            "not lower continuous at 0 although every scalarization is u.s.c. at 0"));
  out.push_back(duality_fixture(abs_marginal_map(), true, "f_X(0) = {z >= 0}, family {-1 -> 0}"));
  out.push_back(duality_fixture(pl_of_y_map(), true, "independent of x; y* is the subgradient -1 of q at 0"));
  out.push_back(duality_fixture(abs_pair_map(), true, "two-dimensional values; f_X(0) = R^2_+"));
  out.push_back(duality_fixture(cut_marginal_map(), false, "regularity fails at 0; the pipeline refuses"));
  out.push_back(random_affine_fixture(seed));
  out.push_back(random_bivariate_fixture(seed));
  return out;
}

inline std::optional<Fixture> find_fixture(const std::string& id, std::uint64_t seed = 7) {
  for (auto& f : builtin_fixtures(seed))
    if (f.id == id) return std::move(f);
  return std::nullopt;
}

struct ParabolaCertificate {
  long t = 0;
  double formula = 0;   // ε t² / √(1 + 4t²)
  double distance = 0;  // distance of (1+ε)(-t, t²) to A + R^2_+
  bool exact = false;   // ε² t⁴ > 1 + 4 t², decided in rationals
};

inline double parabola_formula(const Rational& eps, long t) {
  double td = static_cast<double>(t);
  return eps.get_d() * td * td / std::sqrt(1 + 4 * td * td);
}

// Smallest positive integer t whose separating point (1+ε)(-t, t²) of (1+ε)A + R^2_+ lies
// farther than 1 from A + R^2_+, checked both by the tangent formula (exactly) and by distance.
inline ParabolaCertificate parabola_separation_certificate(const Rational& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  for (long t = 1;; ++t) {
    Rational tt(t);
    bool exact = eps * eps * tt * tt * tt * tt > 1 + 4 * tt * tt;
    if (!exact) continue;
    double s = Rational(1 + eps).get_d();
    double d = parabola_distance(-s * static_cast<double>(t), s * static_cast<double>(t) * static_cast<double>(t));
    if (d > 1 + 1e-6) return {t, parabola_formula(eps, t), d, true};
  }
}

}  // namespace upperset
