#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "upperset/conjugate.hpp"
#include "upperset/continuity.hpp"
#include "upperset/hausdorff.hpp"
#include "upperset/scalarize.hpp"
#include "upperset/setmap.hpp"

namespace upperset {

// f : X × Y -> F(Z,C) with X = R^n, Y = R^p; arguments are (x, y) concatenated.
struct BivariateMap {
  SetValuedMap f;
  std::size_t n = 0, p = 0;

  BivariateMap(SetValuedMap map, std::size_t n_, std::size_t p_) : f(std::move(map)), n(n_), p(p_) {
    if (n == 0 || p == 0) throw std::invalid_argument("bivariate map needs n >= 1 and p >= 1");
    if (f.domain_dim() != n + p) throw std::invalid_argument("bivariate split does not match the domain dimension");
  }

  Vec join(const Vec& x, const Vec& y) const {
    if (x.size() != n || y.size() != p) throw std::invalid_argument("bivariate argument has wrong dimension");
    Vec w = x;
    w.insert(w.end(), y.begin(), y.end());
    return w;
  }
};

enum class Properness { proper, improper, skipped };

inline const char* to_string(Properness p) {
  switch (p) {
    case Properness::proper:
      return "proper";
    case Properness::improper:
      return "improper";
    case Properness::skipped:
      return "skipped";
  }
  return "skipped";
}

struct DirectionLog {
  Vec zstar;
  Properness status = Properness::skipped;
  std::string note;
};

struct DualFamily {
  std::map<Vec, Vec> entries;  // z* -> y*_{z*}, proper directions only
  std::vector<DirectionLog> properness_log;  // in base order
};

namespace detail {

inline Vec head(const Vec& v, std::size_t k) { return Vec(v.begin(), v.begin() + static_cast<long>(k)); }
inline Vec tail(const Vec& v, std::size_t k) { return Vec(v.begin() + static_cast<long>(k), v.end()); }

// The body of y -> f(x0, y).
inline Body slice_body(const Body& b, const Vec& x0, std::size_t n) {
  if (const auto* a = std::get_if<AffineHalfspaceBody>(&b)) {
    AffineHalfspaceBody s;
    s.normals = a->normals;
    if (a->moving_normals())
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < s.normals.size(); ++i) s.normals[i] = s.normals[i] + x0[k] * a->normal_slopes[k][i];
    for (std::size_t i = 0; i < a->normals.size(); ++i) {
      s.offsets.push_back(a->offsets[i] + dot(head(a->coupling[i], n), x0));
      s.coupling.push_back(tail(a->coupling[i], n));
    }
    if (a->moving_normals()) {
      bool moves = false;
      for (std::size_t k = n; k < a->normal_slopes.size(); ++k) {
        s.normal_slopes.push_back(a->normal_slopes[k]);
        for (const auto& row : a->normal_slopes[k]) moves = moves || !is_zero(row);
      }
      if (!moves) s.normal_slopes.clear();
    }
    return s;
  }
  if (const auto* sc = std::get_if<ScaledBaseBody>(&b))
    return ScaledBaseBody{sc->base, tail(sc->alpha_slope, n), sc->alpha_offset + dot(head(sc->alpha_slope, n), x0)};
  const auto& pw = std::get<PiecewiseBody>(b);
  return guarded(tail(pw.guard_normal, n), pw.guard_offset - dot(head(pw.guard_normal, n), x0), pw.strict,
                 slice_body(*pw.then_body, x0, n), slice_body(*pw.else_body, x0, n));
}

}  // namespace detail

// y -> f(x0, y) as a map on Y.
inline SetValuedMap y_slice(const BivariateMap& b, const Vec& x0) {
  if (x0.size() != b.n) throw std::invalid_argument("x0 has wrong dimension");
  return SetValuedMap(b.p, b.f.cone_ptr(), detail::slice_body(b.f.body(), x0, b.n), b.f.name() + "|y");
}

// Exact f_X for a polyhedral graph: the projection of gr f onto (y, z), read back as
// {z : N z >= q + L y}. Projections of polyhedra are closed, so no closure is lost.
inline std::optional<SetValuedMap> exact_marginal_map(const BivariateMap& b) {
  const auto* a = polyhedral_graph_body(b.f);
  if (!a) return std::nullopt;
  const std::size_t m = b.f.value_dim();
  auto g = graph_polyhedron(*a, b.n + b.p, m);
  std::vector<std::size_t> keep;
  for (std::size_t i = b.n; i < b.n + b.p + m; ++i) keep.push_back(i);
  auto proj = project(g, keep).simplified();
  Mat normals, coupling;
  Vec offsets;
  for (const auto& h : proj.halfspaces()) {
    coupling.push_back(-detail::head(h.normal, b.p));
    normals.push_back(detail::tail(h.normal, b.p));
    offsets.push_back(h.offset);
  }
  if (normals.empty()) {  // f_X ≡ Z
    normals.push_back(zeros(m));
    offsets.push_back(-1);
    coupling.push_back(zeros(b.p));
  }
  return SetValuedMap(b.p, b.f.cone_ptr(), affine_body(std::move(normals), std::move(offsets), std::move(coupling)),
                      b.f.name() + "_X");
}

// f_X(y) = cl ∪_x f(x, y): exact for polyhedral graphs, otherwise the union over the grid
// (an inner approximation).
inline UpperSet marginal(const BivariateMap& b, const Vec& y, const XGrid& x_grid) {
  if (y.size() != b.p) throw std::invalid_argument("y has wrong dimension");
  if (auto fx = exact_marginal_map(b)) return evaluate(*fx, y);
  if (x_grid.lo.size() != b.n) throw std::invalid_argument("x grid has wrong dimension");
  std::vector<UpperSet> values;
  for (const auto& x : grid_points(x_grid)) {
    auto v = evaluate(b.f, b.join(x, y));
    if (!v.is_empty()) values.push_back(std::move(v));
  }
  if (values.empty()) return UpperSet::empty(b.f.cone_ptr());
  return lattice_inf(values);
}

namespace detail {

// inf over x of a convex PL function of (x, y) at fixed y.
inline Extended pl_infimum_over_x(const ConvexPL& phi, std::size_t n, const Vec& y) {
  const std::size_t d = n + y.size();
  LinearProgram lp;
  lp.num_vars = n + 1;  // (x, s), maximize -s
  lp.objective = zeros(n + 1);
  lp.objective[n] = -1;
  auto x_part = [&](const Vec& a) {
    Vec row = head(a, n);
    row.push_back(0);
    return row;
  };
  for (const auto& h : phi.domain.halfspaces()) lp.add(x_part(h.normal), Sense::greater_equal, h.offset - dot(tail(h.normal, n), y));
  if (phi.minus_infinity) {
    lp.objective = zeros(n + 1);
    if (!lp_feasible(lp)) return Extended::plus_infinity();
    return Extended::minus_infinity();
  }
  for (const auto& pc : phi.pieces) {
    if (pc.slope.size() != d) throw std::logic_error("piece has wrong dimension");
    Vec row = -x_part(pc.slope);
    row[n] = 1;  // s - a_x·x >= a_y·y + c
    lp.add(row, Sense::greater_equal, dot(tail(pc.slope, n), y) + pc.offset);
  }
  auto r = lp_solve(lp);
  if (r.status == LpStatus::infeasible) return Extended::plus_infinity();
  if (r.status == LpStatus::unbounded) return Extended::minus_infinity();
  return Extended(-r.value);
}

}  // namespace detail

// inf over x of φ_{(f,z*)}(x, y), exact when the scalarization has a closed form.
inline Extended marginal_scalarization(const BivariateMap& b, const Vec& zstar, const Vec& y) {
  if (y.size() != b.p) throw std::invalid_argument("y has wrong dimension");
  auto cf = scalarization_closed_form(b.f, zstar);
  if (!cf) throw std::invalid_argument("scalarization of '" + b.f.name() + "' has no closed form");
  return detail::pl_infimum_over_x(*cf, b.n, y);
}

struct WeakDualityPair {
  Vec ystar;
  Vec zstar;
};

// f_X(0) ⊆ (-f*)((0,y*),z*) for every pair: support values compared exactly, plus membership
// of vertices and window lattice points of f_X(0).
inline Verdict weak_duality_check(const BivariateMap& b, const std::vector<WeakDualityPair>& pairs, std::size_t samples,
                                  const Rational& window = 10) {
  auto fx = exact_marginal_map(b);
  if (!fx) return Verdict::inconclusive(0, "weak duality needs a polyhedral graph for an exact marginal");
  const std::size_t m = b.f.value_dim();
  UpperSet lhs = evaluate(*fx, zeros(b.p));
  std::vector<Vec> pts;
  if (!lhs.is_empty()) {
    Polyhedron poly = lhs.as_polyhedron();
    for (auto& v : to_vrep(poly).points) pts.push_back(std::move(v));
    std::size_t per_axis = 2;
    while (true) {
      std::size_t total = 1;
      for (std::size_t j = 0; j < m; ++j) total *= per_axis + 1;
      if (total >= samples || per_axis > 64) break;
      ++per_axis;
    }
    for (auto& z : detail::lattice_points(Vec(m, -window), Vec(m, window), per_axis))
      if (poly.contains(z)) pts.push_back(std::move(z));
  }
  for (const auto& pr : pairs) {
    DualPair dp{b.join(zeros(b.n), pr.ystar), pr.zstar};
    auto value = neg_conjugate_scalar_route(b.f, dp);
    Extended sigma = lhs.support(pr.zstar);
    auto fail = [&](Vec z, std::string note) {
      Witness w;
      w.kind = "weak-duality";
      w.x = dp.xstar;
      w.z = std::move(z);
      w.direction = pr.zstar;
      w.note = std::move(note);
      return Verdict::fails(std::move(w), 0, "weak duality violated: implementation bug");
    };
    if (sigma > value.conjugate)
      return fail({}, "support of f_X(0) " + to_string(sigma) + " exceeds conjugate " + to_string(value.conjugate));
    for (const auto& z : pts)
      if (!*value.value.contains_exact(z)) return fail(z, "point of f_X(0) outside (-f*)((0,y*),z*)");
  }
  return Verdict::holds("support values and membership compared exactly", static_cast<int>(pairs.size()));
}

struct DualityConfig {
  CheckerConfig checker;
  Rational window = 10;  // Hausdorff window [-window, window]^m
};

struct DualityReport {
  bool applied = false;     // false when the regularity precondition fails
  std::string diagnostic;
  Verdict regularity;
  UpperSet lhs, rhs;
  DualFamily family;
  std::vector<NegConjugateValue> values;  // per proper direction
  GapValue gap;
  std::optional<bool> exact_equal;  // lhs == rhs decided exactly when both are polyhedral
};

namespace detail {

// Canonical y* with inf_x φ(x,0) = -φ*(0,y*). With φ = max_i (a_i·w + c_i) on {G w >= g},
// LP duality gives y* = Σ λ_i a_i^y - Σ μ_j G_j^y over λ in the simplex, μ >= 0 with
// Σ λ_i a_i^x = Σ μ_j G_j^x and Σ λ_i c_i + μ·g >= v. Among those, minimize |y*|_1, then
// y*_1, y*_2, ... in turn.
inline Vec attaining_ystar(const ConvexPL& phi, std::size_t n, std::size_t p, const Rational& v) {
  const std::size_t k = phi.pieces.size();
  const auto& hs = phi.domain.halfspaces();
  const std::size_t r = hs.size();
  const std::size_t nv = k + r + p;  // λ, μ, t
  auto ystar_row = [&](std::size_t j) {
    Vec row = zeros(nv);
    for (std::size_t i = 0; i < k; ++i) row[i] = phi.pieces[i].slope[n + j];
    for (std::size_t i = 0; i < r; ++i) row[k + i] = -hs[i].normal[n + j];
    return row;
  };
  LinearProgram lp;
  lp.num_vars = nv;
  for (std::size_t i = 0; i < k + r; ++i) lp.add(unit_vector(nv, i), Sense::greater_equal, 0);
  Vec simplex = zeros(nv);
  for (std::size_t i = 0; i < k; ++i) simplex[i] = 1;
  lp.add(simplex, Sense::equal, 1);
  for (std::size_t j = 0; j < n; ++j) {
    Vec row = zeros(nv);
    for (std::size_t i = 0; i < k; ++i) row[i] = phi.pieces[i].slope[j];
    for (std::size_t i = 0; i < r; ++i) row[k + i] = -hs[i].normal[j];
    lp.add(row, Sense::equal, 0);
  }
  Vec val = zeros(nv);
  for (std::size_t i = 0; i < k; ++i) val[i] = phi.pieces[i].offset;
  for (std::size_t i = 0; i < r; ++i) val[k + i] = hs[i].offset;
  lp.add(val, Sense::greater_equal, v);
  for (std::size_t j = 0; j < p; ++j) {
    Vec up = unit_vector(nv, k + r + j) - ystar_row(j), down = unit_vector(nv, k + r + j) + ystar_row(j);
    lp.add(up, Sense::greater_equal, 0);
    lp.add(down, Sense::greater_equal, 0);
  }
  Vec l1 = zeros(nv);
  for (std::size_t j = 0; j < p; ++j) l1[k + r + j] = -1;
  std::vector<Vec> stages{l1};
  for (std::size_t j = 0; j < p; ++j) stages.push_back(-ystar_row(j));
  LpResult res;
  for (const auto& obj : stages) {
    lp.objective = obj;
    res = lp_solve(lp);
    if (!res.optimal()) throw std::logic_error("scalar Fenchel dual has no optimal solution");
    lp.add(obj, Sense::equal, res.value);
  }
  Vec y(p);
  for (std::size_t j = 0; j < p; ++j) y[j] = dot(ystar_row(j), res.point);
  return y;
}

}  // namespace detail

// f_X(0) against the intersection over proper base directions of (-f*)((0,y*_{z*}),z*).
inline DualityReport fundamental_duality(const BivariateMap& b, const Vec& x0, const DirectionBase& base,
                                         const DualityConfig& cfg = {}) {
  if (base.cone().dim() != b.f.value_dim())
    throw std::invalid_argument("base cone does not match the map");
  const Vec w0 = b.join(x0, zeros(b.p));
  if (!in_domain(b.f, w0)) throw std::invalid_argument("(x0, 0) is not in dom f");
  auto cone = b.f.cone_ptr();
  const std::size_t m = b.f.value_dim();
  DualityReport rep{false, {}, Verdict{}, UpperSet::empty(cone), UpperSet::universal(cone), {}, {}, {}, std::nullopt};

  XGrid grid{Vec(b.n, -cfg.window), Vec(b.n, cfg.window), b.n == 1 ? 10 : 4};
  rep.lhs = marginal(b, zeros(b.p), grid);

  rep.regularity = check_scalar_semicontinuity(y_slice(b, x0), zeros(b.p), base, cfg.checker, SemiMode::usc);
  if (rep.regularity.status == Status::fails) {
    rep.diagnostic = "regularity precondition violated: scalarization of the y-slice is not u.s.c. at 0 (" +
                     rep.regularity.basis + ")";
    return rep;
  }
  rep.applied = true;
  if (rep.regularity.status == Status::inconclusive)
    rep.diagnostic = "regularity not certified at the examined resolution: " + rep.regularity.basis;

  std::vector<UpperSet> halves;
  for (const auto& z : base.directions()) {
    DirectionLog log{z, Properness::skipped, {}};
    auto cf = scalarization_closed_form(b.f, z);
    if (!cf) {
      log.note = "no closed-form scalarization";
    } else if (cf->identically_plus_infinity() || cf->minus_infinity) {
      log.status = Properness::improper;
      log.note = cf->minus_infinity ? "takes -inf" : "identically +inf";
    } else {
      log.status = Properness::proper;
      Extended v = detail::pl_infimum_over_x(*cf, b.n, zeros(b.p));
      Vec ystar = zeros(b.p);
      if (v.is_minus_infinity()) {
        log.note = "inf over x is -inf: dual unbounded, no attaining y*";
      } else {
        ystar = detail::attaining_ystar(*cf, b.n, b.p, v.value());
      }
      auto value = neg_conjugate_scalar_route(b.f, {b.join(zeros(b.n), ystar), z});
      if (v.is_finite() && value.conjugate != -v)
        throw std::logic_error("computed y* does not attain the scalar dual");
      rep.family.entries[z] = ystar;
      halves.push_back(value.value);
      rep.values.push_back(std::move(value));
    }
    rep.family.properness_log.push_back(std::move(log));
  }
  rep.rhs = halves.empty() ? UpperSet::universal(cone) : lattice_sup(halves);
  rep.gap = window_hausdorff(rep.lhs, rep.rhs, Vec(m, -cfg.window), Vec(m, cfg.window));
  if (rep.lhs.is_polyhedral() && rep.rhs.is_polyhedral()) {
    auto a = set_order_leq(rep.lhs, rep.rhs), c = set_order_leq(rep.rhs, rep.lhs);
    if (a.exact && c.exact) rep.exact_equal = a.holds && c.holds;
  }
  return rep;
}

// base plus the inward facet normals of a polyhedral lhs, so the base contains its normal fan.
inline DirectionBase with_facet_normals(const DirectionBase& base, const UpperSet& lhs) {
  Mat dirs = base.directions();
  if (!lhs.is_polyhedral() || !lhs.is_convex() || lhs.is_empty()) return DirectionBase(base.cone_ptr(), std::move(dirs));
  const Polyhedron poly = lhs.as_polyhedron().simplified();
  for (const auto& h : poly.halfspaces()) {
    if (is_zero(h.normal)) continue;
    Vec d = normalize_direction(-h.normal);
    if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(std::move(d));
  }
  return DirectionBase(base.cone_ptr(), std::move(dirs));
}

// Intersection of (-f*)((0,y*),z*) over an arbitrary list of pairs.
inline UpperSet pair_cloud_rhs(const BivariateMap& b, const std::vector<WeakDualityPair>& pairs) {
  std::vector<UpperSet> halves;
  for (const auto& pr : pairs) halves.push_back(neg_conjugate_scalar_route(b.f, {b.join(zeros(b.n), pr.ystar), pr.zstar}).value);
  if (halves.empty()) return UpperSet::universal(b.f.cone_ptr());
  return lattice_sup(halves);
}

}  // namespace upperset
