#pragma once

// Scalarizations φ_{(f,z*)}(x) = -sup{z*·z : z in f(x)}, the halfspace maps
// S_{(x*,z*)}, direction bases in C^- and reconstruction from scalarizations.

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upperset/cone.hpp"
#include "upperset/piecewise_linear.hpp"
#include "upperset/setmap.hpp"
#include "upperset/upper_set.hpp"

namespace upperset {

inline void require_dual_direction(const Cone& c, const Vec& zstar) {
  if (zstar.size() != c.dim()) throw std::invalid_argument("direction has wrong dimension");
  if (is_zero(zstar)) throw std::invalid_argument("direction must be nonzero");
  if (!c.dual_contains(zstar)) throw std::invalid_argument("direction " + to_string(zstar) + " is not in C^-");
}

inline Extended scalarize_value(const UpperSet& v, const Vec& zstar) { return -v.support(zstar); }

inline Extended scalarize_eval(const SetValuedMap& f, const Vec& zstar, const Vec& x) {
  require_dual_direction(f.cone(), zstar);
  return scalarize_value(evaluate(f, x), zstar);
}

// {z : x*·x + z*·z <= 0}.
inline UpperSet s_map(const Vec& xstar, const Vec& zstar, const Vec& x, std::shared_ptr<const Cone> c) {
  require_dual_direction(*c, zstar);
  if (xstar.size() != x.size()) throw std::invalid_argument("dimension mismatch in s_map");
  Polyhedron h(c->dim(), {{-zstar, dot(xstar, x)}});
  return UpperSet::from_polyhedron(std::move(h), std::move(c));
}

// Closed form of φ_{(f,z*)} for {z : N z >= q + L x}. By LP duality
//   φ(x) = max{(q + L x)·y : y >= 0, N^T y = -z*},
// so vertices of the dual polyhedron give affine pieces and its recession rays
// d cut out the domain (q + L x)·d <= 0. No dual point means φ = -∞ on the domain.
inline ConvexPL affine_scalarization(const AffineHalfspaceBody& a, const Vec& zstar, std::size_t n) {
  if (a.moving_normals()) throw std::invalid_argument("closed form needs fixed normals");
  const std::size_t k = a.normals.size();
  const std::size_t m = zstar.size();
  if (k == 0) return ConvexPL::minus_infinity_on(Polyhedron::whole_space(n));
  std::vector<Halfspace> dual;
  for (std::size_t i = 0; i < k; ++i) dual.push_back({unit_vector(k, i), 0});
  Mat nt;  // rows of N^T
  for (std::size_t j = 0; j < m; ++j) {
    Vec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = a.normals[i][j];
    dual.push_back({row, -zstar[j]});
    dual.push_back({-row, zstar[j]});
    nt.push_back(std::move(row));
  }
  Mat nonneg;
  for (std::size_t i = 0; i < k; ++i) nonneg.push_back(unit_vector(k, i));
  auto rec = enumerate_cone(nonneg, nt, k);

  ConvexPL out;
  out.dim = n;
  std::vector<Halfspace> dom;
  for (const auto& d : rec.rays) {
    // (q + L x)·d <= 0  ⇔  (-L^T d)·x >= q·d
    Vec s = zeros(n);
    for (std::size_t i = 0; i < k; ++i) s = s + d[i] * a.coupling[i];
    dom.push_back({-s, dot(a.offsets, d)});
  }
  out.domain = Polyhedron(n, std::move(dom)).simplified();

  VRep v = to_vrep(Polyhedron(k, std::move(dual)));
  if (v.empty()) {
    out.minus_infinity = true;
    return out;
  }
  for (const auto& y : v.points) {
    Vec s = zeros(n);
    for (std::size_t i = 0; i < k; ++i) s = s + y[i] * a.coupling[i];
    AffinePiece p{std::move(s), dot(a.offsets, y)};
    if (std::find(out.pieces.begin(), out.pieces.end(), p) == out.pieces.end()) out.pieces.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline bool is_empty_body(const Body& b) {
  const auto* a = std::get_if<AffineHalfspaceBody>(&b);
  if (!a || a->moving_normals()) return false;
  for (std::size_t i = 0; i < a->normals.size(); ++i)
    if (is_zero(a->normals[i]) && is_zero(a->coupling[i]) && sgn(a->offsets[i]) > 0) return true;
  return false;
}

inline std::optional<ConvexPL> closed_form(const Body& b, const Vec& zstar, std::size_t n) {
  if (const auto* a = std::get_if<AffineHalfspaceBody>(&b)) {
    if (a->moving_normals()) return std::nullopt;
    return affine_scalarization(*a, zstar, n);
  }
  if (const auto* p = std::get_if<PiecewiseBody>(&b)) {
    // Only a closed guard with an empty complement keeps the function closed-form convex.
    if (p->strict || !is_empty_body(*p->else_body)) return std::nullopt;
    auto inner = closed_form(*p->then_body, zstar, n);
    if (!inner) return std::nullopt;
    inner->domain = inner->domain.with({p->guard_normal, p->guard_offset}).simplified();
    return inner;
  }
  return std::nullopt;
}

}  // namespace detail

// Exact convex piecewise-linear φ_{(f,z*)} when the body admits one.
inline std::optional<ConvexPL> scalarization_closed_form(const SetValuedMap& f, const Vec& zstar) {
  require_dual_direction(f.cone(), zstar);
  return detail::closed_form(f.body(), zstar, f.domain_dim());
}

struct Scalarization {
  const SetValuedMap* map = nullptr;
  Vec zstar;
  std::optional<PiecewiseLinearFn> closed_form;

  Extended operator()(const Vec& x) const {
    if (closed_form) return (*closed_form)(x);
    return scalarize_eval(*map, zstar, x);
  }
};

inline Scalarization make_scalarization(const SetValuedMap& f, const Vec& zstar) {
  Scalarization s{&f, zstar, std::nullopt};
  if (auto cf = scalarization_closed_form(f, zstar)) s.closed_form = to_piecewise(*cf);
  return s;
}

// Finite B ⊆ C^- \ {0}.
class DirectionBase {
 public:
  DirectionBase(std::shared_ptr<const Cone> cone, Mat directions) : cone_(std::move(cone)), dirs_(std::move(directions)) {
    if (dirs_.empty()) throw std::invalid_argument("direction base is empty");
    for (const auto& d : dirs_) require_dual_direction(*cone_, d);
  }

  // Extreme rays of C^- plus a fan refinement (first nonzero entry ±1).
  static DirectionBase fan(std::shared_ptr<const Cone> cone, std::size_t fan_size) {
    Mat dirs = dual_direction_fan(*cone, fan_size);
    return DirectionBase(std::move(cone), std::move(dirs));
  }

  const Cone& cone() const { return *cone_; }
  const std::shared_ptr<const Cone>& cone_ptr() const { return cone_; }
  const Mat& directions() const { return dirs_; }
  std::size_t size() const { return dirs_.size(); }

 private:
  std::shared_ptr<const Cone> cone_;
  Mat dirs_;
};

struct BaseCertificate {
  bool sup_finite = true;          // sup over B of z*·z < ∞ for each z (finite B)
  double inf_sup_value = 0;        // inf over B of sup over the unit ball of -z*·z
  bool inf_sup_positive = false;
  bool generates_dual_cone = false;  // cone B = C^-
  bool unit_normalized = false;    // every direction has Euclidean norm 1
  std::vector<Vec> missing_rays;   // extreme rays of C^- outside cone B
};

// Is v a nonnegative combination of the given generators?
inline bool in_conic_hull(const Mat& gens, const Vec& v) {
  LinearProgram lp;
  lp.num_vars = gens.size();
  lp.objective = zeros(gens.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Vec row(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) row[i] = gens[i][j];
    lp.add(row, Sense::equal, v[j]);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) lp.add(unit_vector(gens.size(), i), Sense::greater_equal, 0);
  return lp_feasible(lp);
}

// The neighborhood V in the second condition is the Euclidean unit ball, where
// sup over V of -z*·z is the Euclidean norm of z*.
inline BaseCertificate certify_base(const DirectionBase& base) {
  BaseCertificate cert;
  double inf = std::numeric_limits<double>::infinity();
  bool unit = true;
  for (const auto& d : base.directions()) {
    inf = std::min(inf, norm2(d));
    Rational sq = dot(d, d);
    if (sq != 1) unit = false;
  }
  cert.inf_sup_value = inf;
  cert.inf_sup_positive = inf > 0;
  cert.unit_normalized = unit;
  Cone dual = dual_cone(base.cone());
  cert.generates_dual_cone = true;
  for (const auto& r : dual.generators())
    if (!in_conic_hull(base.directions(), r)) {
      cert.generates_dual_cone = false;
      cert.missing_rays.push_back(r);
    }
  return cert;
}

// ∩ over base directions of {z : φ(x) <= -z*·z}; contains f(x).
inline UpperSet reconstruct_value(const UpperSet& v, const DirectionBase& base) {
  std::vector<Halfspace> hs;
  for (const auto& d : base.directions()) {
    Extended s = v.support(d);
    if (s.is_minus_infinity()) return UpperSet::empty(v.cone_ptr());
    if (s.is_plus_infinity()) continue;
    hs.push_back({-d, -s.value()});
  }
  return UpperSet::from_polyhedron(Polyhedron(v.dim(), std::move(hs)), v.cone_ptr());
}

inline UpperSet reconstruct(const SetValuedMap& f, const Vec& x, const DirectionBase& base) {
  auto v = evaluate(f, x);
  require_same_cone(v, UpperSet::empty(base.cone_ptr()));
  return reconstruct_value(v, base);
}

}  // namespace upperset
