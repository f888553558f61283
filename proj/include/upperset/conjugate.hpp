#pragma once

// Negative conjugate (-f*)(x*, z*) = {z : z*·z <= (φ_{(f,z*)})*(x*)}, computed
// from the scalar conjugate or directly as the closed union over x of
// f(x) + S_{(x*,z*)}(-x).

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "upperset/piecewise_linear.hpp"
#include "upperset/scalarize.hpp"
#include "upperset/setmap.hpp"
#include "upperset/upper_set.hpp"

namespace upperset {

struct DualPair {
  Vec xstar;
  Vec zstar;
};

struct NegConjugateValue {
  DualPair pair;
  Extended conjugate;  // (φ_{(f,z*)})*(x*)
  UpperSet value;
};

// {z : z*·z <= level}; Z for +∞, ∅ for -∞.
inline UpperSet dual_halfspace(const Vec& zstar, const Extended& level, std::shared_ptr<const Cone> c) {
  if (level.is_plus_infinity()) return UpperSet::universal(std::move(c));
  if (level.is_minus_infinity()) return UpperSet::empty(std::move(c));
  Polyhedron h(c->dim(), {{-zstar, -level.value()}});
  return UpperSet::from_polyhedron(std::move(h), std::move(c));
}

inline void check_pair(const SetValuedMap& f, const DualPair& pair) {
  if (pair.xstar.size() != f.domain_dim()) throw std::invalid_argument("x* has wrong dimension");
  require_dual_direction(f.cone(), pair.zstar);
}

inline NegConjugateValue neg_conjugate_scalar_route(const SetValuedMap& f, const DualPair& pair) {
  check_pair(f, pair);
  auto cf = scalarization_closed_form(f, pair.zstar);
  if (!cf) throw std::invalid_argument("scalarization of '" + f.name() + "' has no closed form");
  Extended level = scalar_conjugate(to_piecewise(*cf), pair.xstar);
  return {pair, level, dual_halfspace(pair.zstar, level, f.cone_ptr())};
}

struct XGrid {
  Vec lo, hi;
  int level = 10;  // 2^level + 1 points per axis in one dimension
};

// Dyadic grid: 2^level intervals along each axis when n = 1, and about 2^level
// points in total otherwise. Grids at consecutive levels are nested.
inline std::vector<Vec> grid_points(const XGrid& g) {
  const std::size_t n = g.lo.size();
  int per_axis_level = n == 1 ? g.level : std::max(1, static_cast<int>(std::ceil(static_cast<double>(g.level) / n)));
  std::size_t intervals = std::size_t{1} << per_axis_level;
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& prefix : out)
      for (std::size_t k = 0; k <= intervals; ++k) {
        Vec v = prefix;
        v.push_back(g.lo[i] + (g.hi[i] - g.lo[i]) * Rational(static_cast<long>(k), static_cast<long>(intervals)));
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

struct DirectConjugate {
  UpperSet value;          // closed union over the grid
  Extended level;          // the union is {z : z*·z <= level}
  std::vector<Extended> summand_levels;  // f(x) + S(-x) = {z : z*·z <= level_x}, grid order
  std::size_t grid_size = 0;
};

// The summands are halfspaces with the common normal -z*, hence nested, and
// their closed union is the one with the largest level.
inline DirectConjugate neg_conjugate_direct(const SetValuedMap& f, const DualPair& pair, const XGrid& grid) {
  check_pair(f, pair);
  DirectConjugate out{UpperSet::empty(f.cone_ptr()), Extended::minus_infinity(), {}, 0};
  auto points = grid_points(grid);
  out.grid_size = points.size();
  for (const auto& x : points) {
    // f(x) + S(-x) = {z : z*·z <= x*·x + σ_{f(x)}(z*)}
    Extended sigma = evaluate(f, x).support(pair.zstar);
    Extended term = sigma.is_minus_infinity() ? sigma : Extended(dot(pair.xstar, x)) + sigma;
    out.summand_levels.push_back(term);
    out.level = std::max(out.level, term);
  }
  out.value = dual_halfspace(pair.zstar, out.level, f.cone_ptr());
  return out;
}

// Window gap between two halfspaces {z*·z <= a} ⊇ {z*·z <= b}: (a - b)/|z*|.
inline double level_gap(const Vec& zstar, const Extended& outer, const Extended& inner) {
  if (outer == inner) return 0;
  if (!outer.is_finite() || !inner.is_finite()) return std::numeric_limits<double>::infinity();
  return Rational(outer.value() - inner.value()).get_d() / norm2(zstar);
}

}  // namespace upperset
