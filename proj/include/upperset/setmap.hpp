#pragma once

// Set-valued maps f : R^n -> F(R^m, C) from a closed family of bodies:
//   affine halfspace   f(x) = {z : (N0 + sum_k x_k N_k) z >= q + L x}
//   scaled base        f(x) = alpha(x) A + C, alpha affine and nonnegative
//   piecewise          guard g·x >= h (or >) selects one of two sub-bodies

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "upperset/cone.hpp"
#include "upperset/polyhedron.hpp"
#include "upperset/upper_set.hpp"
#include "upperset/verdict.hpp"

namespace upperset {

struct AffineHalfspaceBody {
  Mat normals;  // N0, one row per constraint
  Vec offsets;  // q
  Mat coupling;  // L, rows x n
  std::vector<Mat> normal_slopes;  // N_k per x-coordinate; empty when the normals do not move

  bool moving_normals() const { return !normal_slopes.empty(); }
};

struct ScaledBaseBody {
  UpperSet base;
  Vec alpha_slope;
  Rational alpha_offset;
};

struct PiecewiseBody;
using Body = std::variant<AffineHalfspaceBody, ScaledBaseBody, PiecewiseBody>;

struct PiecewiseBody {
  Vec guard_normal;
  Rational guard_offset;
  bool strict = false;
  std::shared_ptr<const Body> then_body;
  std::shared_ptr<const Body> else_body;

  bool selects_then(const Vec& x) const {
    Rational v = dot(guard_normal, x);
    return strict ? v > guard_offset : v >= guard_offset;
  }
};

class SetValuedMap {
 public:
  SetValuedMap(std::size_t n, std::shared_ptr<const Cone> cone, Body body, std::string name = {})
      : n_(n), cone_(std::move(cone)), body_(std::make_shared<const Body>(std::move(body))), name_(std::move(name)) {
    if (n_ == 0) throw std::invalid_argument("map domain dimension must be positive");
    validate(*body_);
  }

  std::size_t domain_dim() const { return n_; }
  std::size_t value_dim() const { return cone_->dim(); }
  const Cone& cone() const { return *cone_; }
  const std::shared_ptr<const Cone>& cone_ptr() const { return cone_; }
  const Body& body() const { return *body_; }
  const std::string& name() const { return name_; }

  const std::optional<Polyhedron>& declared_domain() const { return declared_domain_; }
  SetValuedMap& declare_domain(Polyhedron d) {
    if (d.dim() != n_) throw std::invalid_argument("declared domain has wrong dimension");
    declared_domain_ = std::move(d);
    return *this;
  }

 private:
  void validate(const Body& b) const {
    if (const auto* a = std::get_if<AffineHalfspaceBody>(&b)) {
      const std::size_t rows = a->normals.size();
      if (a->offsets.size() != rows || a->coupling.size() != rows)
        throw std::invalid_argument("affine body: row counts differ");
      for (std::size_t i = 0; i < rows; ++i) {
        if (a->normals[i].size() != cone_->dim()) throw std::invalid_argument("affine body: normal has wrong dimension");
        if (a->coupling[i].size() != n_) throw std::invalid_argument("affine body: coupling has wrong dimension");
        if (!a->moving_normals())
          for (const auto& g : cone_->generators())
            if (sgn(dot(a->normals[i], g)) < 0)
              throw std::invalid_argument("affine body: constraint is not upper closed");
      }
      if (a->moving_normals()) {
        if (a->normal_slopes.size() != n_) throw std::invalid_argument("affine body: one normal slope per x-coordinate");
        for (const auto& s : a->normal_slopes)
          if (s.size() != rows) throw std::invalid_argument("affine body: normal slope has wrong row count");
      }
    } else if (const auto* s = std::get_if<ScaledBaseBody>(&b)) {
      if (s->alpha_slope.size() != n_) throw std::invalid_argument("scaled body: alpha slope has wrong dimension");
      require_same_cone(s->base, UpperSet::empty(cone_));
      if (!s->base.is_convex()) throw std::invalid_argument("scaled body: base must be convex");
    } else {
      const auto& p = std::get<PiecewiseBody>(b);
      if (p.guard_normal.size() != n_) throw std::invalid_argument("piecewise body: guard has wrong dimension");
      if (!p.then_body || !p.else_body) throw std::invalid_argument("piecewise body: missing branch");
      validate(*p.then_body);
      validate(*p.else_body);
    }
  }

  std::size_t n_;
  std::shared_ptr<const Cone> cone_;
  std::shared_ptr<const Body> body_;
  std::string name_;
  std::optional<Polyhedron> declared_domain_;
};

// The body that governs the value at x (piecewise guards resolved).
inline const Body& active_body(const Body& b, const Vec& x) {
  const Body* cur = &b;
  while (const auto* p = std::get_if<PiecewiseBody>(cur)) cur = p->selects_then(x) ? p->then_body.get() : p->else_body.get();
  return *cur;
}

inline Polyhedron affine_value_polyhedron(const AffineHalfspaceBody& a, const Vec& x, std::size_t m) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < a.normals.size(); ++i) {
    Vec n = a.normals[i];
    for (std::size_t k = 0; k < a.normal_slopes.size(); ++k) n = n + x[k] * a.normal_slopes[k][i];
    hs.push_back({std::move(n), a.offsets[i] + dot(a.coupling[i], x)});
  }
  return Polyhedron(m, std::move(hs));
}

inline Rational scale_factor(const ScaledBaseBody& s, const Vec& x) { return dot(s.alpha_slope, x) + s.alpha_offset; }

inline UpperSet evaluate_body(const Body& b, const Vec& x, const std::shared_ptr<const Cone>& cone) {
  const Body& leaf = active_body(b, x);
  if (const auto* a = std::get_if<AffineHalfspaceBody>(&leaf))
    return UpperSet::from_polyhedron(affine_value_polyhedron(*a, x, cone->dim()), cone);
  const auto& s = std::get<ScaledBaseBody>(leaf);
  Rational alpha = scale_factor(s, x);
  if (sgn(alpha) < 0) throw std::domain_error("scale factor is negative at " + to_string(x));
  return scale(s.base, alpha);
}

inline UpperSet evaluate(const SetValuedMap& f, const Vec& x) {
  if (x.size() != f.domain_dim()) throw std::invalid_argument("dimension mismatch in evaluate");
  return evaluate_body(f.body(), x, f.cone_ptr());
}

// Polyhedral convex graph: a single affine body whose normals do not depend on x.
inline const AffineHalfspaceBody* polyhedral_graph_body(const SetValuedMap& f) {
  const auto* a = std::get_if<AffineHalfspaceBody>(&f.body());
  if (a && !a->moving_normals()) return a;
  return nullptr;
}

// gr f = {(x,z) : N z - L x >= q} in R^{n+m}.
inline Polyhedron graph_polyhedron(const AffineHalfspaceBody& a, std::size_t n, std::size_t m) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < a.normals.size(); ++i) {
    Vec row = -a.coupling[i];
    row.insert(row.end(), a.normals[i].begin(), a.normals[i].end());
    hs.push_back({std::move(row), a.offsets[i]});
  }
  return Polyhedron(n + m, std::move(hs));
}

inline Polyhedron graph_polyhedron(const SetValuedMap& f) {
  const auto* a = polyhedral_graph_body(f);
  if (!a) throw std::invalid_argument("graph is not a single polyhedron");
  return graph_polyhedron(*a, f.domain_dim(), f.value_dim());
}

// dom f for polyhedral graphs: the projection of the graph onto x.
inline Polyhedron domain_polyhedron(const SetValuedMap& f) {
  auto g = graph_polyhedron(f);
  std::vector<std::size_t> keep(f.domain_dim());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return project(g, keep).simplified();
}

inline bool in_domain(const SetValuedMap& f, const Vec& x) { return !evaluate(f, x).is_empty(); }

struct SamplingPlan {
  std::uint64_t seed = 1;
  std::size_t count = 64;
  Vec lo, hi;  // sampling box in X
  long denominator = 8;  // samples lie on the lattice (1/denominator) Z^n
};

inline Vec sample_point(std::mt19937_64& rng, const SamplingPlan& plan) {
  Vec x;
  for (std::size_t i = 0; i < plan.lo.size(); ++i) {
    Rational lo = plan.lo[i] * plan.denominator, hi = plan.hi[i] * plan.denominator;
    mpz_class a = lo.get_num() / lo.get_den();
    mpz_class b = hi.get_num() / hi.get_den();
    std::uniform_int_distribution<long> d(a.get_si(), b.get_si());
    x.push_back(make_rational(d(rng), plan.denominator));
  }
  return x;
}

// f(t x1 + (1-t) x2) ≼_C t f(x1) + (1-t) f(x2) on sampled triples.
inline Verdict convexity_check(const SetValuedMap& f, const SamplingPlan& plan) {
  if (plan.lo.size() != f.domain_dim() || plan.hi.size() != f.domain_dim())
    throw std::invalid_argument("sampling box has wrong dimension");
  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<long> tnum(1, 7);
  bool exact = true;
  for (std::size_t k = 0; k < plan.count; ++k) {
    Vec x1 = sample_point(rng, plan), x2 = sample_point(rng, plan);
    Rational t = make_rational(tnum(rng), 8);
    auto v1 = evaluate(f, x1), v2 = evaluate(f, x2);
    if (!v1.is_convex() || !v2.is_convex()) throw std::invalid_argument("convexity_check of a union-valued map");
    Vec xm = t * x1 + (Rational(1) - t) * x2;
    auto mid = evaluate(f, xm);
    auto rhs = minkowski_sum(scale(v1, t), scale(v2, Rational(1) - t));
    auto r = set_order_leq(mid, rhs);
    exact = exact && r.exact;
    if (!r.holds) {
      Witness w;
      w.kind = "convexity";
      w.x = xm;
      w.sequence = {x1, x2};
      w.epsilon = t;
      if (r.witness) w.z = *r.witness;
      w.note = "z lies in t f(x1) + (1-t) f(x2) but not in f(t x1 + (1-t) x2); epsilon holds t";
      return Verdict::fails(std::move(w), static_cast<int>(k));
    }
  }
  if (polyhedral_graph_body(f)) return Verdict::holds("polyhedral graph", static_cast<int>(plan.count));
  return Verdict::holds(exact ? "all sampled triples (exact)" : "all sampled triples (direction grid)",
                        static_cast<int>(plan.count));
}

}  // namespace upperset

namespace upperset {

// Body-building helpers.

inline Body affine_body(Mat normals, Vec offsets, Mat coupling) {
  return AffineHalfspaceBody{std::move(normals), std::move(offsets), std::move(coupling), {}};
}

// x ↦ P for a fixed upper closed polyhedron P (independent of x).
inline Body constant_body(const Polyhedron& p, std::size_t n) {
  AffineHalfspaceBody a;
  for (const auto& h : p.halfspaces()) {
    a.normals.push_back(h.normal);
    a.offsets.push_back(h.offset);
    a.coupling.push_back(zeros(n));
  }
  return a;
}

inline Body empty_body(std::size_t n, std::size_t m) { return constant_body(Polyhedron::empty(m), n); }

inline Body cone_body(const Cone& c, std::size_t n) { return constant_body(c.as_polyhedron(), n); }

inline Body guarded(Vec normal, Rational offset, bool strict, Body then_body, Body else_body) {
  return PiecewiseBody{std::move(normal), std::move(offset), strict, std::make_shared<const Body>(std::move(then_body)),
                       std::make_shared<const Body>(std::move(else_body))};
}

}  // namespace upperset
