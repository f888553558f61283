#pragma once

// H-represented polyhedra {z : n_i·z >= b_i} and the vertex/ray machinery
// (cone enumeration by active-set search) behind sums, closures and projections.
// Enumeration is exponential in the dimension and meant for m <= 4 plus a few
// auxiliary coordinates.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "upperset/linalg.hpp"
#include "upperset/lp.hpp"
#include "upperset/rational.hpp"

namespace upperset {

struct Halfspace {
  Vec normal;
  Rational offset;  // normal·z >= offset

  bool contains(const Vec& z) const { return dot(normal, z) >= offset; }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

// Positive rescaling so that the first nonzero normal entry is ±1.
inline Halfspace normalized(Halfspace h) {
  for (const auto& x : h.normal) {
    if (sgn(x) != 0) {
      Rational s = abs(x);
      for (auto& y : h.normal) y /= s;
      h.offset /= s;
      return h;
    }
  }
  return h;
}

class Polyhedron {
 public:
  explicit Polyhedron(std::size_t dim = 0) : dim_(dim) {}
  Polyhedron(std::size_t dim, std::vector<Halfspace> halfspaces)
      : dim_(dim), halfspaces_(std::move(halfspaces)) {
    for (const auto& h : halfspaces_)
      if (h.normal.size() != dim_) throw std::invalid_argument("halfspace dimension mismatch");
  }

  static Polyhedron whole_space(std::size_t dim) { return Polyhedron(dim); }
  static Polyhedron empty(std::size_t dim) { return Polyhedron(dim, {{zeros(dim), 1}}); }
  static Polyhedron point(const Vec& p) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < p.size(); ++i) {
      hs.push_back({unit_vector(p.size(), i), p[i]});
      hs.push_back({unit_vector(p.size(), i, -1), -p[i]});
    }
    return Polyhedron(p.size(), std::move(hs));
  }
  static Polyhedron box(const Vec& lo, const Vec& hi) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      hs.push_back({unit_vector(lo.size(), i), lo[i]});
      hs.push_back({unit_vector(lo.size(), i, -1), -hi[i]});
    }
    return Polyhedron(lo.size(), std::move(hs));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool contains(const Vec& z) const {
    if (z.size() != dim_) throw std::invalid_argument("dimension mismatch in Polyhedron::contains");
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const Halfspace& h) { return h.contains(z); });
  }

  LinearProgram as_lp(const Vec& objective) const {
    LinearProgram lp;
    lp.num_vars = dim_;
    lp.objective = objective;
    for (const auto& h : halfspaces_) lp.add(h.normal, Sense::greater_equal, h.offset);
    return lp;
  }

  bool is_empty() const { return !lp_feasible(as_lp(zeros(dim_))); }

  Polyhedron intersect(const Polyhedron& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch in intersect");
    auto hs = halfspaces_;
    hs.insert(hs.end(), other.halfspaces_.begin(), other.halfspaces_.end());
    return Polyhedron(dim_, std::move(hs));
  }

  Polyhedron with(Halfspace h) const {
    auto hs = halfspaces_;
    hs.push_back(std::move(h));
    return Polyhedron(dim_, std::move(hs));
  }

  Polyhedron translated(const Vec& shift) const {
    std::vector<Halfspace> hs;
    for (const auto& h : halfspaces_) hs.push_back({h.normal, h.offset + dot(h.normal, shift)});
    return Polyhedron(dim_, std::move(hs));
  }

  // Normalized, duplicate-free copy with trivially true rows removed.
  Polyhedron simplified() const {
    std::vector<Halfspace> hs;
    for (const auto& h : halfspaces_) {
      if (is_zero(h.normal)) {
        if (sgn(h.offset) > 0) return empty(dim_);
        continue;
      }
      auto n = normalized(h);
      if (std::find(hs.begin(), hs.end(), n) == hs.end()) hs.push_back(std::move(n));
    }
    return Polyhedron(dim_, std::move(hs));
  }

 private:
  std::size_t dim_;
  std::vector<Halfspace> halfspaces_;
};

// max objective·z over p.
inline LpResult lp_solve(const Vec& objective, const Polyhedron& p) {
  if (objective.size() != p.dim()) throw std::invalid_argument("dimension mismatch in lp_solve");
  return lp_solve(p.as_lp(objective));
}

// sup{zstar·z : z in p}; -inf for empty p, +inf when unbounded.
inline Extended support_value(const Polyhedron& p, const Vec& zstar) {
  if (zstar.size() != p.dim()) throw std::invalid_argument("dimension mismatch in support_value");
  auto r = lp_solve(zstar, p);
  switch (r.status) {
    case LpStatus::infeasible:
      return Extended::minus_infinity();
    case LpStatus::unbounded:
      return Extended::plus_infinity();
    case LpStatus::optimal:
      break;
  }
  return Extended(r.value);
}

// Exact test p ⊆ q: q's every halfspace is implied over p.
inline bool polyhedron_subset(const Polyhedron& p, const Polyhedron& q) {
  if (p.is_empty()) return true;
  for (const auto& h : q.halfspaces()) {
    auto r = lp_solve(-h.normal, p);
    if (r.status == LpStatus::unbounded) return false;
    if (-r.value < h.offset) return false;
  }
  return true;
}

inline bool polyhedron_equal(const Polyhedron& p, const Polyhedron& q) {
  return polyhedron_subset(p, q) && polyhedron_subset(q, p);
}

// Generators of {y : A y >= 0, E y = 0}: extreme rays of the pointed part plus a
// basis of the lineality space.
struct ConeGenerators {
  Mat rays;
  Mat lines;
};

inline ConeGenerators enumerate_cone(const Mat& ineq, const Mat& eq, std::size_t d) {
  Mat all = ineq;
  all.insert(all.end(), eq.begin(), eq.end());
  ConeGenerators out;
  out.lines = all.empty() ? null_space(Mat{}, d) : null_space(all, d);
  if (all.empty()) {
    out.lines.clear();
    for (std::size_t i = 0; i < d; ++i) out.lines.push_back(unit_vector(d, i));
  }
  Mat fixed = eq;
  fixed.insert(fixed.end(), out.lines.begin(), out.lines.end());
  const std::size_t fixed_rank = fixed.empty() ? 0 : rank(fixed, d);
  if (fixed_rank >= d) return out;
  const std::size_t need = d - 1 - fixed_rank;
  if (need > ineq.size()) return out;

  auto is_ray = [&](const Vec& r) {
    for (const auto& a : ineq)
      if (sgn(dot(a, r)) < 0) return false;
    return true;
  };
  auto add_ray = [&](Vec r) {
    r = normalize_direction(std::move(r));
    if (std::find(out.rays.begin(), out.rays.end(), r) == out.rays.end()) out.rays.push_back(std::move(r));
  };

  std::vector<std::size_t> idx(need);
  for (std::size_t i = 0; i < need; ++i) idx[i] = i;
  for (;;) {
    Mat m = fixed;
    for (auto i : idx) m.push_back(ineq[i]);
    Mat ns = m.empty() ? Mat{} : null_space(m, d);
    if (m.empty()) {
      for (std::size_t i = 0; i < d; ++i) ns.push_back(unit_vector(d, i));
    }
    if (ns.size() == 1) {
      if (is_ray(ns[0])) add_ray(ns[0]);
      else if (is_ray(-ns[0])) add_ray(-ns[0]);
    }
    // next combination
    if (need == 0) break;
    std::size_t k = need;
    while (k > 0 && idx[k - 1] == ineq.size() - need + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < need; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// p = conv(points) + cone(rays) + span(lines).
struct VRep {
  std::size_t dim = 0;
  Mat points;
  Mat rays;
  Mat lines;

  bool empty() const { return points.empty(); }
};

inline VRep to_vrep(const Polyhedron& p) {
  const std::size_t d = p.dim();
  Mat ineq;
  for (const auto& h : p.halfspaces()) {
    Vec row = h.normal;
    row.push_back(-h.offset);
    ineq.push_back(std::move(row));
  }
  ineq.push_back(unit_vector(d + 1, d));
  auto gens = enumerate_cone(ineq, {}, d + 1);
  VRep v;
  v.dim = d;
  for (const auto& r : gens.rays) {
    Vec z(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
    if (sgn(r[d]) > 0) v.points.push_back((Rational(1) / r[d]) * z);
    else v.rays.push_back(normalize_direction(z));
  }
  for (const auto& l : gens.lines) v.lines.emplace_back(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(d));
  if (v.points.empty()) {
    v.rays.clear();
    v.lines.clear();
  }
  return v;
}

inline Polyhedron to_hrep(const VRep& v) {
  const std::size_t d = v.dim;
  if (v.points.empty()) return Polyhedron::empty(d);
  Mat ineq, eq;
  for (const auto& p : v.points) {
    Vec row = p;
    row.push_back(1);
    ineq.push_back(std::move(row));
  }
  for (const auto& r : v.rays) {
    Vec row = r;
    row.push_back(0);
    ineq.push_back(std::move(row));
  }
  for (const auto& l : v.lines) {
    Vec row = l;
    row.push_back(0);
    eq.push_back(std::move(row));
  }
  auto dual = enumerate_cone(ineq, eq, d + 1);
  std::vector<Halfspace> hs;
  auto push = [&](const Vec& g) {
    Vec a(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(d));
    if (is_zero(a)) return;
    hs.push_back({a, -g[d]});
  };
  for (const auto& g : dual.rays) push(g);
  for (const auto& g : dual.lines) {
    push(g);
    push(-g);
  }
  return Polyhedron(d, std::move(hs)).simplified();
}

// Exact Minkowski sum through vertex/ray representations.
inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in minkowski_sum");
  VRep va = to_vrep(a), vb = to_vrep(b);
  if (va.empty() || vb.empty()) return Polyhedron::empty(a.dim());
  VRep s;
  s.dim = a.dim();
  for (const auto& p : va.points)
    for (const auto& q : vb.points) s.points.push_back(p + q);
  s.rays = va.rays;
  s.rays.insert(s.rays.end(), vb.rays.begin(), vb.rays.end());
  s.lines = va.lines;
  s.lines.insert(s.lines.end(), vb.lines.begin(), vb.lines.end());
  return to_hrep(s);
}

// Image of p under z -> z[keep].
inline Polyhedron project(const Polyhedron& p, const std::vector<std::size_t>& keep) {
  VRep v = to_vrep(p);
  VRep out;
  out.dim = keep.size();
  if (v.empty()) return Polyhedron::empty(keep.size());
  auto pick = [&](const Vec& z) {
    Vec r;
    for (auto k : keep) r.push_back(z[k]);
    return r;
  };
  for (const auto& x : v.points) out.points.push_back(pick(x));
  for (const auto& x : v.rays) {
    auto r = pick(x);
    if (!is_zero(r)) out.rays.push_back(std::move(r));
  }
  for (const auto& x : v.lines) {
    auto r = pick(x);
    if (!is_zero(r)) out.lines.push_back(std::move(r));
  }
  return to_hrep(out);
}

}  // namespace upperset
