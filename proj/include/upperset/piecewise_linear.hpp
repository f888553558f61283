#pragma once

// Extended-real piecewise-linear functions on R^n.
//
// ConvexPL: x ↦ max_k (s_k·x + c_k) on a polyhedral domain, +∞ outside; or ≡ -∞ on
// the domain when `minus_infinity` is set. The family is closed under conjugation.
//
// PiecewiseLinearFn: affine forms on explicit polyhedral regions, -∞ on listed
// regions and +∞ elsewhere. Regions are tried in order.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upperset/lp.hpp"
#include "upperset/polyhedron.hpp"
#include "upperset/rational.hpp"

namespace upperset {

struct AffinePiece {
  Vec slope;
  Rational offset;

  Rational operator()(const Vec& x) const { return dot(slope, x) + offset; }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct ConvexPL {
  std::size_t dim = 0;
  std::vector<AffinePiece> pieces;
  Polyhedron domain;
  bool minus_infinity = false;

  static ConvexPL plus_infinity(std::size_t n) { return {n, {}, Polyhedron::empty(n), false}; }
  static ConvexPL minus_infinity_on(Polyhedron d) {
    std::size_t n = d.dim();
    return {n, {}, std::move(d), true};
  }

  Extended operator()(const Vec& x) const {
    if (x.size() != dim) throw std::invalid_argument("dimension mismatch in piecewise-linear evaluation");
    if (!domain.contains(x)) return Extended::plus_infinity();
    if (minus_infinity) return Extended::minus_infinity();
    if (pieces.empty()) throw std::logic_error("finite piecewise-linear function without pieces");
    Rational best = pieces.front()(x);
    for (const auto& p : pieces) best = std::max(best, p(x));
    return Extended(best);
  }

  bool identically_plus_infinity() const { return domain.is_empty(); }
  bool proper() const { return !minus_infinity && !domain.is_empty(); }
};

struct PiecewiseLinearFn {
  struct Piece {
    Polyhedron region;
    AffinePiece form;
  };
  std::size_t dim = 0;
  std::vector<Piece> pieces;
  std::vector<Polyhedron> minus_inf_regions;
  bool convex = false;

  Extended operator()(const Vec& x) const {
    if (x.size() != dim) throw std::invalid_argument("dimension mismatch in piecewise-linear evaluation");
    for (const auto& r : minus_inf_regions)
      if (r.contains(x)) return Extended::minus_infinity();
    for (const auto& p : pieces)
      if (p.region.contains(x)) return Extended(p.form(x));
    return Extended::plus_infinity();
  }

  bool has_minus_infinity() const {
    for (const auto& r : minus_inf_regions)
      if (!r.is_empty()) return true;
    return false;
  }
};

// Regions where each affine piece attains the max; empty regions dropped.
inline PiecewiseLinearFn to_piecewise(const ConvexPL& f) {
  PiecewiseLinearFn out;
  out.dim = f.dim;
  out.convex = true;
  if (f.domain.is_empty()) return out;
  if (f.minus_infinity) {
    out.minus_inf_regions.push_back(f.domain);
    return out;
  }
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    Polyhedron region = f.domain;
    for (std::size_t j = 0; j < f.pieces.size(); ++j) {
      if (j == k) continue;
      // s_k·x + c_k >= s_j·x + c_j
      region = region.with({f.pieces[k].slope - f.pieces[j].slope, f.pieces[j].offset - f.pieces[k].offset});
    }
    if (!region.is_empty()) out.pieces.push_back({region.simplified(), f.pieces[k]});
  }
  return out;
}

// sup_x x*·x - φ(x), one LP per piece.
inline Extended scalar_conjugate(const PiecewiseLinearFn& phi, const Vec& xstar) {
  if (xstar.size() != phi.dim) throw std::invalid_argument("dimension mismatch in scalar_conjugate");
  if (phi.has_minus_infinity()) return Extended::plus_infinity();
  Extended best = Extended::minus_infinity();
  for (const auto& p : phi.pieces) {
    auto r = lp_solve(xstar - p.form.slope, p.region);
    if (r.status == LpStatus::infeasible) continue;
    if (r.status == LpStatus::unbounded) return Extended::plus_infinity();
    best = std::max(best, Extended(r.value - p.form.offset));
  }
  return best;
}

// Conjugate through the vertices and recession directions of the epigraph.
inline ConvexPL conjugate(const ConvexPL& f) {
  const std::size_t n = f.dim;
  if (f.minus_infinity && !f.domain.is_empty()) return ConvexPL::plus_infinity(n);
  if (f.domain.is_empty()) return ConvexPL::minus_infinity_on(Polyhedron::whole_space(n));
  // epi f = {(x,t) : t - s_k·x >= c_k, x in dom}.
  std::vector<Halfspace> hs;
  for (const auto& h : f.domain.halfspaces()) {
    Vec row = h.normal;
    row.push_back(0);
    hs.push_back({std::move(row), h.offset});
  }
  for (const auto& p : f.pieces) {
    Vec row = -p.slope;
    row.push_back(1);
    hs.push_back({std::move(row), p.offset});
  }
  VRep v = to_vrep(Polyhedron(n + 1, std::move(hs)));
  ConvexPL out;
  out.dim = n;
  for (const auto& pt : v.points) {
    Vec s(pt.begin(), pt.begin() + static_cast<std::ptrdiff_t>(n));
    AffinePiece piece{std::move(s), -pt[n]};
    if (std::find(out.pieces.begin(), out.pieces.end(), piece) == out.pieces.end()) out.pieces.push_back(piece);
  }
  std::vector<Halfspace> dom;
  // y·d_x - d_t <= 0 for rays, = 0 for lines.
  for (const auto& r : v.rays) {
    Vec dx(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
    dom.push_back({-dx, -r[n]});
  }
  for (const auto& l : v.lines) {
    Vec dx(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(n));
    dom.push_back({-dx, -l[n]});
    dom.push_back({dx, l[n]});
  }
  out.domain = Polyhedron(n, std::move(dom)).simplified();
  return out;
}

}  // namespace upperset
