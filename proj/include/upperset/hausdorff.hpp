#pragma once

// Euclidean distances and window-restricted Hausdorff gaps between upper sets.
// The gap of a from b on a window W is sup{d(p, b) : p in a ∩ W}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "upperset/linalg.hpp"
#include "upperset/polyhedron.hpp"
#include "upperset/upper_set.hpp"

namespace upperset {

// Squared distance from p to a nonempty polyhedron, exact. Enumerates active sets
// of linearly independent rows until the KKT conditions hold.
inline Rational squared_distance(const Polyhedron& poly, const Vec& p) {
  if (poly.contains(p)) return 0;
  const auto& hs = poly.halfspaces();
  const std::size_t m = poly.dim();
  const std::size_t k = hs.size();
  std::vector<std::size_t> idx;
  std::optional<Rational> best;
  // Any KKT point of the convex problem is the projection, so the first one found wins.
  std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
    if (!idx.empty()) {
      Mat ns;
      for (auto i : idx) ns.push_back(hs[i].normal);
      if (rank(ns, m) == idx.size()) {
        // Gram system (N N^T) λ = N p - b.
        Mat gram(idx.size(), Vec(idx.size()));
        Vec rhs(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
          for (std::size_t b = 0; b < idx.size(); ++b) gram[a][b] = dot(ns[a], ns[b]);
          rhs[a] = dot(ns[a], p) - hs[idx[a]].offset;
        }
        if (auto lambda = solve_square(gram, rhs)) {
          bool ok = true;
          for (const auto& l : *lambda)
            if (sgn(l) > 0) ok = false;  // λ here is the negative multiplier
          if (ok) {
            Vec z = p;
            for (std::size_t a = 0; a < idx.size(); ++a) z = z - (*lambda)[a] * ns[a];
            if (poly.contains(z)) {
              Vec d = z - p;
              best = dot(d, d);
              return true;
            }
          }
        }
      } else {
        return false;
      }
    }
    if (idx.size() == m) return false;
    for (std::size_t i = start; i < k; ++i) {
      idx.push_back(i);
      bool found = search(i + 1);
      idx.pop_back();
      if (found) return true;
    }
    return false;
  };
  search(0);
  if (!best) throw std::logic_error("projection onto polyhedron failed");
  return *best;
}

struct GapValue {
  double value = 0;
  bool exact = true;
};

inline double distance_to(const UpperSet& b, const Vec& p, bool* exact = nullptr) {
  if (exact) *exact = true;
  if (b.is_empty()) return std::numeric_limits<double>::infinity();
  if (b.is_polyhedral()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b.pieces()) best = std::min(best, std::sqrt(squared_distance(q, p).get_d()));
    return best;
  }
  if (b.oracle().distance) return b.oracle().distance(p);
  // Lower bound through the supporting halfspaces on the grid.
  if (exact) *exact = false;
  double best = 0;
  for (const auto& d : b.oracle().grid) {
    Extended s = b.support(d);
    if (!s.is_finite()) continue;
    best = std::max(best, Rational(dot(d, p) - s.value()).get_d() / norm2(d));
  }
  return best;
}

namespace detail {

inline std::vector<Vec> lattice_points(const Vec& lo, const Vec& hi, std::size_t per_axis) {
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < lo.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& prefix : out)
      for (std::size_t k = 0; k <= per_axis; ++k) {
        Vec v = prefix;
        v.push_back(lo[i] + (hi[i] - lo[i]) * Rational(static_cast<long>(k), static_cast<long>(per_axis)));
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

// Vertices of a polyhedron inside a 2-D box, by clipping the box polygon
// against each halfspace in turn (exact).
inline std::vector<Vec> clip_box_2d(const Polyhedron& p, const Vec& lo, const Vec& hi) {
  std::vector<Vec> poly{{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}};
  for (const auto& h : p.halfspaces()) {
    std::vector<Vec> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec& a = poly[i];
      const Vec& b = poly[(i + 1) % poly.size()];
      Rational fa = dot(h.normal, a) - h.offset, fb = dot(h.normal, b) - h.offset;
      if (sgn(fa) >= 0) next.push_back(a);
      if ((sgn(fa) > 0 && sgn(fb) < 0) || (sgn(fa) < 0 && sgn(fb) > 0)) {
        Rational t = fa / (fa - fb);
        next.push_back(a + t * (b - a));
      }
    }
    poly = std::move(next);
    if (poly.empty()) break;
  }
  return poly;
}

}  // namespace detail

// sup{d(p, b) : p in a ∩ [lo, hi]}.
inline GapValue window_excess(const UpperSet& a, const UpperSet& b, const Vec& lo, const Vec& hi) {
  GapValue g;
  if (a.is_empty()) return g;
  const auto window = Polyhedron::box(lo, hi);
  auto consider = [&](const Vec& p) {
    bool ex = true;
    g.value = std::max(g.value, distance_to(b, p, &ex));
    g.exact = g.exact && ex;
  };
  if (a.is_polyhedral()) {
    for (const auto& piece : a.pieces()) {
      auto clipped = piece.intersect(window);
      auto vertices = a.dim() == 2 ? detail::clip_box_2d(piece, lo, hi) : to_vrep(clipped).points;
      for (const auto& p : vertices) consider(p);
      if (!b.is_convex() && !vertices.empty()) {
        // distance to a union is not convex: also probe a lattice of the piece
        g.exact = false;
        for (const auto& p : detail::lattice_points(lo, hi, 16))
          if (clipped.contains(p)) consider(p);
      }
    }
    return g;
  }
  g.exact = false;
  const std::size_t per_axis = a.dim() <= 2 ? 200 : 24;
  for (const auto& p : detail::lattice_points(lo, hi, per_axis)) {
    auto in = a.contains_exact(p);
    bool inside = in ? *in : member(a, p, 0);
    if (inside) consider(p);
  }
  return g;
}

inline GapValue window_hausdorff(const UpperSet& a, const UpperSet& b, const Vec& lo, const Vec& hi) {
  auto ab = window_excess(a, b, lo, hi);
  auto ba = window_excess(b, a, lo, hi);
  return {std::max(ab.value, ba.value), ab.exact && ba.exact};
}

}  // namespace upperset
