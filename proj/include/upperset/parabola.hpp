#pragma once

// The parabola base A = {(s, s^2) : s in R} and the upper set A + R^2_+,
// which equals {z : z2 >= min(z1, 0)^2}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "upperset/cone.hpp"
#include "upperset/upper_set.hpp"

namespace upperset {

// sup{a z1 + b z2 : z in A + R^2_+}.
inline Extended parabola_support(const Vec& d) {
  if (d.size() != 2) throw std::invalid_argument("parabola support expects a 2-vector");
  const Rational& a = d[0];
  const Rational& b = d[1];
  if (sgn(b) < 0 && sgn(a) <= 0) return Extended(-(a * a) / (4 * b));
  if (sgn(a) == 0 && sgn(b) == 0) return Extended(0);
  return Extended::plus_infinity();
}

inline bool parabola_contains(const Vec& z) {
  Rational m = sgn(z[0]) < 0 ? z[0] : Rational(0);
  return z[1] >= m * m;
}

namespace detail {

// Real roots of t^3 + p t + q = 0.
inline std::vector<double> depressed_cubic_roots(double p, double q) {
  std::vector<double> roots;
  double disc = q * q / 4 + p * p * p / 27;
  if (disc > 0) {
    double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
  } else if (p == 0) {
    roots.push_back(0);
  } else {
    double r = 2 * std::sqrt(-p / 3);
    double arg = std::clamp(3 * q / (p * r), -1.0, 1.0);
    double phi = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2 * M_PI * k / 3));
  }
  // One Newton polish per root.
  for (auto& t : roots) {
    double f = t * t * t + p * t + q;
    double fp = 3 * t * t + p;
    if (fp != 0) t -= f / fp;
  }
  return roots;
}

}  // namespace detail

// Euclidean distance from p to A + R^2_+.
inline double parabola_distance(double p1, double p2) {
  if (p2 >= std::pow(std::min(p1, 0.0), 2)) return 0;
  // Boundary: the left branch {(t, t^2) : t <= 0} and the ray {(t, 0) : t >= 0}.
  double best = p1 >= 0 ? std::abs(p2) : std::hypot(p1, p2);
  auto g = [&](double t) { return std::hypot(t - p1, t * t - p2); };
  best = std::min(best, g(0));
  // Critical points of |(t, t^2) - p|^2: 2t^3 + (1 - 2 p2) t - p1 = 0.
  for (double t : detail::depressed_cubic_roots((1 - 2 * p2) / 2, -p1 / 2))
    if (t <= 0) best = std::min(best, g(t));
  return best;
}

inline SupportOracle parabola_oracle(const Cone& c, std::size_t fan_size = 64) {
  SupportOracle o;
  o.support = parabola_support;
  o.contains = parabola_contains;
  o.distance = [](const Vec& z) { return parabola_distance(z[0].get_d(), z[1].get_d()); };
  o.grid = dual_direction_fan(c, fan_size);
  o.label = "parabola";
  return o;
}

// A + R^2_+ over the cone c, which must be R^2_+.
inline UpperSet parabola_set(std::shared_ptr<const Cone> c, std::size_t fan_size = 64) {
  if (!(*c == Cone::nonnegative_orthant(2))) throw std::invalid_argument("parabola set is defined over R^2_+");
  auto oracle = parabola_oracle(*c, fan_size);
  return UpperSet::from_oracle(std::move(oracle), std::move(c));
}

}  // namespace upperset
