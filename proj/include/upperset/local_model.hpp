#pragma once

// Behavior of a map along a ray x0 + t u as t -> 0+: the body that governs it,
// whether the values are eventually empty, exact limits of support values
// (simplex over germs), and the Painlevé–Kuratowski limit set when it is known
// in closed form together with the two Hausdorff convergence flags.

#include <optional>
#include <string>
#include <variant>

#include "upperset/germ.hpp"
#include "upperset/lp.hpp"
#include "upperset/setmap.hpp"
#include "upperset/upper_set.hpp"

namespace upperset {

enum class Tri { yes, no, unknown };

// An upper set together with how it was produced, so that sets coming from the
// same scaled base can be compared exactly.
struct LocalSet {
  UpperSet set;
  const ScaledBaseBody* scaled = nullptr;  // set = factor * scaled->base when non-null
  Rational factor;
};

// a ⊆ b, when decidable exactly.
inline std::optional<bool> exact_subset(const LocalSet& a, const LocalSet& b) {
  if (a.set.is_empty()) return true;
  if (b.set.is_empty()) return false;
  if (a.scaled && b.scaled && a.scaled == b.scaled) {
    if (a.factor == b.factor) return true;
    auto zero_in = a.scaled->base.contains_exact(zeros(a.set.dim()));
    // With 0 in the convex base, sA ⊆ tA whenever s <= t.
    if (zero_in && *zero_in && a.factor <= b.factor) return true;
  }
  auto r = set_order_leq(b.set, a.set);
  if (r.exact) return r.holds;
  return std::nullopt;
}

inline LocalSet local_value(const SetValuedMap& f, const Vec& x) {
  const Body& leaf = active_body(f.body(), x);
  LocalSet out{evaluate(f, x), nullptr, 0};
  if (const auto* s = std::get_if<ScaledBaseBody>(&leaf)) {
    out.scaled = s;
    out.factor = scale_factor(*s, x);
  }
  return out;
}

// The leaf body selected at x0 + t u for all small t > 0.
inline const Body& leaf_along(const Body& b, const Vec& x0, const Vec& u) {
  const Body* cur = &b;
  while (const auto* p = std::get_if<PiecewiseBody>(cur)) {
    Germ v = Germ::linear(dot(p->guard_normal, x0) - p->guard_offset, dot(p->guard_normal, u));
    bool then = v.sign() > 0 || (v.sign() == 0 && !p->strict);
    cur = then ? p->then_body.get() : p->else_body.get();
  }
  return *cur;
}

// {z : N(x) z >= q + L x} at x = x0 + t u as an LP over germs in t.
inline BasicLinearProgram<Germ> germ_value_lp(const AffineHalfspaceBody& a, const Vec& x0, const Vec& u,
                                              std::size_t m) {
  BasicLinearProgram<Germ> lp;
  lp.num_vars = m;
  lp.objective.assign(m, Germ(0));
  for (std::size_t i = 0; i < a.normals.size(); ++i) {
    std::vector<Germ> row;
    for (std::size_t j = 0; j < m; ++j) {
      Rational c0 = a.normals[i][j], c1 = 0;
      for (std::size_t k = 0; k < a.normal_slopes.size(); ++k) {
        c0 += x0[k] * a.normal_slopes[k][i][j];
        c1 += u[k] * a.normal_slopes[k][i][j];
      }
      row.push_back(Germ::linear(c0, c1));
    }
    lp.add(std::move(row), Sense::greater_equal,
           Germ::linear(a.offsets[i] + dot(a.coupling[i], x0), dot(a.coupling[i], u)));
  }
  return lp;
}

struct SideModel {
  enum class Kind { affine, scaled, unsupported };
  Vec u;
  Kind kind = Kind::unsupported;
  const Body* leaf = nullptr;
  bool empty = false;              // values are empty for all small t > 0
  std::optional<LocalSet> limit;   // Painlevé–Kuratowski limit of the values (nonempty sides)
  Tri upper_h = Tri::unknown;      // excess e(f(x0 + t u), limit) -> 0
  Tri lower_h = Tri::unknown;      // excess e(limit, f(x0 + t u)) -> 0
  Rational alpha0, alpha1;         // scaled leaves: factor a0 + a1 t
  std::string note;

  bool supported() const { return kind != Kind::unsupported; }
};

inline SideModel side_model(const SetValuedMap& f, const Vec& x0, const Vec& u) {
  SideModel s;
  s.u = u;
  s.leaf = &leaf_along(f.body(), x0, u);
  const std::size_t m = f.value_dim();
  if (const auto* a = std::get_if<AffineHalfspaceBody>(s.leaf)) {
    s.kind = SideModel::Kind::affine;
    s.empty = !lp_feasible(germ_value_lp(*a, x0, u, m));
    if (s.empty) return s;
    if (!a->moving_normals()) {
      // Polyhedral graph: the leaf is Hausdorff-Lipschitz on its closed domain.
      s.limit = LocalSet{UpperSet::from_polyhedron(affine_value_polyhedron(*a, x0, m), f.cone_ptr()), nullptr, 0};
      s.upper_h = s.lower_h = Tri::yes;
    } else {
      s.note = "moving normals: limit set not available in closed form";
    }
    return s;
  }
  const auto& sc = std::get<ScaledBaseBody>(*s.leaf);
  s.alpha0 = scale_factor(sc, x0);
  s.alpha1 = dot(sc.alpha_slope, u);
  if (sgn(s.alpha0) < 0 || (sgn(s.alpha0) == 0 && sgn(s.alpha1) < 0)) {
    s.note = "negative scale factor near x0";
    return s;
  }
  s.kind = SideModel::Kind::scaled;
  if (sc.base.is_empty()) {
    s.empty = true;
    return s;
  }
  const bool polyhedral = sc.base.is_polyhedral() && sc.base.is_convex();
  if (sgn(s.alpha0) > 0) {
    s.limit = LocalSet{scale(sc.base, s.alpha0), &sc, s.alpha0};
    if (sgn(s.alpha1) == 0 || polyhedral) {
      s.upper_h = s.lower_h = Tri::yes;
    } else {
      // e(sA, tA) = (s - t) sup σ_A over unit directions; with 0 in A that sup is
      // >= 0 and the infimum is <= 0, so only shrinking towards x0 is controlled.
      auto zero_in = sc.base.contains_exact(zeros(m));
      if (zero_in && *zero_in) {
        if (sgn(s.alpha1) > 0) s.lower_h = Tri::yes;
        else s.upper_h = Tri::yes;
      }
    }
  } else if (sgn(s.alpha1) == 0) {
    s.limit = LocalSet{scale(sc.base, 0), nullptr, 0};
    s.upper_h = s.lower_h = Tri::yes;
  } else if (polyhedral) {
    // tP -> recession cone of P as t -> 0+.
    std::vector<Halfspace> hs;
    const Polyhedron base = sc.base.as_polyhedron();
    for (const auto& h : base.halfspaces()) hs.push_back({h.normal, 0});
    s.limit = LocalSet{UpperSet::from_polyhedron(Polyhedron(m, std::move(hs)), f.cone_ptr()), nullptr, 0};
    s.upper_h = s.lower_h = Tri::yes;
  } else {
    s.note = "scale factor tends to 0 on a non-polyhedral base";
  }
  return s;
}

// lim σ_{f(x0 + t u)}(z*) as t -> 0+ (exact).
inline Extended side_support_limit(const SideModel& s, const Vec& x0, const Vec& zstar, const Cone& c) {
  if (!s.supported()) throw std::invalid_argument("side is not supported by the local model");
  if (s.empty) return Extended::minus_infinity();
  if (const auto* a = std::get_if<AffineHalfspaceBody>(s.leaf)) {
    auto lp = germ_value_lp(*a, x0, s.u, c.dim());
    for (std::size_t j = 0; j < zstar.size(); ++j) lp.objective[j] = Germ(zstar[j]);
    auto r = lp_solve(lp);
    if (r.status == LpStatus::unbounded) return Extended::plus_infinity();
    if (r.status == LpStatus::infeasible) return Extended::minus_infinity();
    return r.value.limit();
  }
  const auto& sc = std::get<ScaledBaseBody>(*s.leaf);
  Extended base = sc.base.support(zstar);
  if (sgn(s.alpha0) > 0) return scale(s.alpha0, base);
  if (sgn(s.alpha1) == 0) return support_value(c.as_polyhedron(), zstar);
  // t a1 σ_A(z*) -> 0 when finite, stays +∞ otherwise.
  return base.is_finite() ? Extended(0) : base;
}

}  // namespace upperset
