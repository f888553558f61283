#pragma once

// Elements of F(Z,C) = {A : A = cl(A + C)} ordered by reverse inclusion.
// Two representations: a finite union of H-polyhedra (exact; nonconvex unions
// allowed) and a support oracle for convex sets whose support function is known
// in closed form, probed on a finite direction grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "upperset/cone.hpp"
#include "upperset/polyhedron.hpp"
#include "upperset/rational.hpp"

namespace upperset {

// Directions in C^- \ {0}: generators of C^- plus interpolated fan directions.
// In R^2 the fan follows the angular order of the generators; elsewhere it
// interpolates between generator pairs.
inline Mat dual_direction_fan(const Cone& c, std::size_t fan_size) {
  Mat gens;
  {
    Mat dual_normals;
    for (const auto& g : c.generators()) dual_normals.push_back(-g);
    auto e = enumerate_cone(dual_normals, {}, c.dim());
    for (const auto& r : e.rays) gens.push_back(normalize_direction(r));
    for (const auto& l : e.lines) {
      gens.push_back(normalize_direction(l));
      gens.push_back(-normalize_direction(l));
    }
  }
  Mat out = gens;
  auto add = [&](Vec v) {
    if (is_zero(v)) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  if (gens.size() < 2 || fan_size <= gens.size()) return out;

  std::vector<std::pair<Vec, Vec>> edges;
  if (c.dim() == 2) {
    Mat sorted = gens;
    std::sort(sorted.begin(), sorted.end(), [](const Vec& a, const Vec& b) {
      return std::atan2(a[1].get_d(), a[0].get_d()) < std::atan2(b[1].get_d(), b[0].get_d());
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const Vec& a = sorted[i];
      const Vec& b = sorted[(i + 1) % sorted.size()];
      if (sorted.size() == 2 && i == 1) break;
      Rational det = a[0] * b[1] - a[1] * b[0];
      if (sgn(det) > 0) edges.emplace_back(a, b);
      else if (sorted.size() == 2 && sgn(det) < 0) edges.emplace_back(b, a);
    }
  } else {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (!is_zero(gens[i] + gens[j])) edges.emplace_back(gens[i], gens[j]);
  }
  if (edges.empty()) return out;
  const std::size_t per_edge = std::max<std::size_t>(1, (fan_size - gens.size()) / edges.size() + 1);
  for (const auto& [a, b] : edges) {
    for (std::size_t k = 1; k < per_edge; ++k) {
      Rational s(static_cast<long>(k), static_cast<long>(per_edge));
      s.canonicalize();
      add((Rational(1) - s) * a + s * b);
    }
  }
  return out;
}

struct SupportOracle {
  std::function<Extended(const Vec&)> support;
  std::function<bool(const Vec&)> contains;   // exact membership when available
  std::function<double(const Vec&)> distance;  // Euclidean distance when available
  Mat grid;
  std::string label;
};

struct OrderResult {
  bool holds = false;
  bool exact = true;  // false: decided on the support grid only
  std::optional<Vec> witness;  // point of b outside a, when found
};

class UpperSet {
 public:
  using Pieces = std::vector<Polyhedron>;

  static UpperSet empty(std::shared_ptr<const Cone> cone) { return UpperSet(std::move(cone), Pieces{}); }
  static UpperSet universal(std::shared_ptr<const Cone> cone) {
    auto d = cone->dim();
    return UpperSet(std::move(cone), Pieces{Polyhedron::whole_space(d)});
  }

  // p must already be upper closed: n·g >= 0 for every normal n and generator g.
  static UpperSet from_polyhedron(Polyhedron p, std::shared_ptr<const Cone> cone) {
    check_upper_closed(p, *cone);
    if (p.is_empty()) return empty(std::move(cone));
    return UpperSet(std::move(cone), Pieces{std::move(p)});
  }

  static UpperSet from_union(Pieces pieces, std::shared_ptr<const Cone> cone) {
    Pieces kept;
    for (auto& p : pieces) {
      check_upper_closed(p, *cone);
      if (!p.is_empty()) kept.push_back(std::move(p));
    }
    return UpperSet(std::move(cone), std::move(kept));
  }

  static UpperSet from_oracle(SupportOracle oracle, std::shared_ptr<const Cone> cone) {
    if (oracle.grid.empty()) oracle.grid = dual_direction_fan(*cone, 64);
    return UpperSet(std::move(cone), std::move(oracle));
  }

  const Cone& cone() const { return *cone_; }
  const std::shared_ptr<const Cone>& cone_ptr() const { return cone_; }
  std::size_t dim() const { return cone_->dim(); }

  bool is_polyhedral() const { return std::holds_alternative<Pieces>(rep_); }
  bool is_oracle() const { return !is_polyhedral(); }
  const Pieces& pieces() const { return std::get<Pieces>(rep_); }
  const SupportOracle& oracle() const { return std::get<SupportOracle>(rep_); }

  bool is_convex() const { return is_oracle() || pieces().size() <= 1; }

  bool is_empty() const {
    if (is_polyhedral()) return pieces().empty();
    return oracle().support(oracle().grid.front()).is_minus_infinity();
  }

  bool is_universal() const {
    if (!is_polyhedral() || pieces().empty()) return false;
    for (const auto& p : pieces())
      if (p.simplified().halfspaces().empty()) return true;
    return false;
  }

  // The single polyhedron of a convex polyhedral value (empty polyhedron for ∅).
  Polyhedron as_polyhedron() const {
    if (!is_polyhedral() || pieces().size() > 1)
      throw std::invalid_argument("value is not a single convex polyhedron");
    if (pieces().empty()) return Polyhedron::empty(dim());
    return pieces().front();
  }

  // sup{zstar·z : z in A}.
  Extended support(const Vec& zstar) const {
    if (zstar.size() != dim()) throw std::invalid_argument("dimension mismatch in support");
    if (is_oracle()) return oracle().support(zstar);
    Extended best = Extended::minus_infinity();
    for (const auto& p : pieces()) best = std::max(best, support_value(p, zstar));
    return best;
  }

  // Exact membership where the representation allows it.
  std::optional<bool> contains_exact(const Vec& z) const {
    if (z.size() != dim()) throw std::invalid_argument("dimension mismatch in membership");
    if (is_polyhedral()) {
      for (const auto& p : pieces())
        if (p.contains(z)) return true;
      return false;
    }
    if (oracle().contains) return oracle().contains(z);
    return std::nullopt;
  }

  Mat support_grid() const {
    if (is_oracle()) return oracle().grid;
    return dual_direction_fan(*cone_, 64);
  }

 private:
  UpperSet(std::shared_ptr<const Cone> cone, std::variant<Pieces, SupportOracle> rep)
      : cone_(std::move(cone)), rep_(std::move(rep)) {}

  static void check_upper_closed(const Polyhedron& p, const Cone& c) {
    if (p.dim() != c.dim()) throw std::invalid_argument("polyhedron and cone dimensions differ");
    for (const auto& h : p.halfspaces())
      for (const auto& g : c.generators())
        if (sgn(dot(h.normal, g)) < 0)
          throw std::invalid_argument("polyhedron is not upper closed with respect to the cone");
  }

  std::shared_ptr<const Cone> cone_;
  std::variant<Pieces, SupportOracle> rep_;
};

inline void require_same_cone(const UpperSet& a, const UpperSet& b) {
  if (a.cone_ptr() != b.cone_ptr() && !(a.cone() == b.cone()))
    throw std::invalid_argument("upper sets live over different cones");
}

// cl(P + C).
inline UpperSet upper_closure(const Polyhedron& p, std::shared_ptr<const Cone> c) {
  if (p.dim() != c->dim()) throw std::invalid_argument("dimension mismatch in upper_closure");
  auto sum = minkowski_sum(p, c->as_polyhedron());
  return UpperSet::from_polyhedron(std::move(sum), std::move(c));
}

inline UpperSet embed_point(const Vec& z, std::shared_ptr<const Cone> c) {
  if (z.size() != c->dim()) throw std::invalid_argument("dimension mismatch in embed_point");
  auto p = c->as_polyhedron().translated(z);
  return UpperSet::from_polyhedron(std::move(p), std::move(c));
}

namespace detail {

struct Region {
  std::vector<Halfspace> closed;
  std::vector<Halfspace> strict;  // normal·z > offset
};

// A point of the region, or nullopt if the region is empty.
inline std::optional<Vec> region_point(const Region& r, std::size_t dim) {
  LinearProgram lp;
  lp.num_vars = dim + 1;
  lp.objective = unit_vector(dim + 1, dim);
  for (const auto& h : r.closed) {
    Vec row = h.normal;
    row.push_back(0);
    lp.add(row, Sense::greater_equal, h.offset);
  }
  for (const auto& h : r.strict) {
    Vec row = h.normal;
    row.push_back(-1);
    lp.add(row, Sense::greater_equal, h.offset);
  }
  lp.add(unit_vector(dim + 1, dim), Sense::less_equal, 1);
  auto res = lp_solve(lp);
  if (!res.optimal()) return std::nullopt;
  if (!r.strict.empty() && sgn(res.value) <= 0) return std::nullopt;
  return Vec(res.point.begin(), res.point.begin() + static_cast<std::ptrdiff_t>(dim));
}

// Is the region covered by pieces[k..]? On failure returns an uncovered point.
inline std::optional<Vec> uncovered_point(const Region& region, const std::vector<Polyhedron>& pieces,
                                          std::size_t k, std::size_t dim) {
  auto pt = region_point(region, dim);
  if (!pt) return std::nullopt;
  if (k == pieces.size()) return pt;
  const auto& hs = pieces[k].halfspaces();
  // Region ⊆ piece k? (closure of the region suffices since pieces are closed)
  Polyhedron closure(dim, region.closed);
  for (const auto& h : region.strict) closure = closure.with(h);
  if (polyhedron_subset(closure, pieces[k])) return std::nullopt;
  // region \ piece_k split into disjoint parts {h_i violated, h_j satisfied for j < i}.
  for (std::size_t i = 0; i < hs.size(); ++i) {
    Region part = region;
    part.strict.push_back({-hs[i].normal, -hs[i].offset});
    for (std::size_t j = 0; j < i; ++j) part.closed.push_back(hs[j]);
    if (auto w = uncovered_point(part, pieces, k + 1, dim)) return w;
  }
  return std::nullopt;
}

}  // namespace detail

// A ≼_C B, i.e. B ⊆ A.
inline OrderResult set_order_leq(const UpperSet& a, const UpperSet& b) {
  require_same_cone(a, b);
  OrderResult res;
  if (b.is_empty() || a.is_universal()) {
    res.holds = true;
    return res;
  }
  if (a.is_polyhedral() && b.is_polyhedral()) {
    for (const auto& q : b.pieces()) {
      detail::Region region{q.halfspaces(), {}};
      if (auto w = detail::uncovered_point(region, a.pieces(), 0, a.dim())) {
        res.holds = false;
        res.witness = *w;
        return res;
      }
    }
    res.holds = true;
    return res;
  }
  if (a.is_polyhedral()) {
    if (!a.is_convex())
      throw std::invalid_argument("order test of an oracle set against a nonconvex union");
    if (a.pieces().empty()) {
      res.holds = false;
      return res;
    }
    // inf over b of n·z >= offset for every halfspace of a; -n lies in C^-.
    for (const auto& h : a.pieces().front().halfspaces()) {
      Extended inf = -b.support(-h.normal);
      if (inf < Extended(h.offset)) {
        res.holds = false;
        return res;
      }
    }
    res.holds = true;
    return res;
  }
  if (!b.is_convex()) throw std::invalid_argument("order test of a nonconvex union against an oracle set");
  res.exact = false;
  Mat grid = a.support_grid();
  for (const auto& d : b.support_grid())
    if (std::find(grid.begin(), grid.end(), d) == grid.end()) grid.push_back(d);
  for (const auto& d : grid) {
    if (b.support(d) > a.support(d)) {
      res.holds = false;
      return res;
    }
  }
  res.holds = true;
  return res;
}

// inf = closed union (no convexification).
inline UpperSet lattice_inf(const std::vector<UpperSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("lattice_inf of an empty family");
  std::vector<const UpperSet*> kept;
  for (const auto& s : sets) {
    require_same_cone(sets.front(), s);
    if (!s.is_empty()) kept.push_back(&s);
  }
  if (kept.empty()) return UpperSet::empty(sets.front().cone_ptr());
  if (kept.size() == 1) return *kept.front();
  UpperSet::Pieces pieces;
  for (const auto* s : kept) {
    if (!s->is_polyhedral()) throw std::invalid_argument("lattice_inf of support-oracle sets is not representable");
    pieces.insert(pieces.end(), s->pieces().begin(), s->pieces().end());
  }
  return UpperSet::from_union(std::move(pieces), sets.front().cone_ptr());
}

// sup = intersection; operands must be convex polyhedral (or trivial).
inline UpperSet lattice_sup(const std::vector<UpperSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("lattice_sup of an empty family");
  std::vector<const UpperSet*> kept;
  for (const auto& s : sets) {
    require_same_cone(sets.front(), s);
    if (s.is_empty()) return UpperSet::empty(sets.front().cone_ptr());
    if (!s.is_universal()) kept.push_back(&s);
  }
  if (kept.empty()) return UpperSet::universal(sets.front().cone_ptr());
  if (kept.size() == 1) return *kept.front();
  Polyhedron acc = Polyhedron::whole_space(sets.front().dim());
  for (const auto* s : kept) {
    if (!s->is_polyhedral() || !s->is_convex())
      throw std::invalid_argument("lattice_sup requires convex polyhedral operands");
    acc = acc.intersect(s->as_polyhedron());
  }
  return UpperSet::from_polyhedron(acc.simplified(), sets.front().cone_ptr());
}

// Exact for polyhedral sets (tol ignored); for oracles an outer test on the grid.
inline bool member(const UpperSet& a, const Vec& z, const Rational& tol) {
  if (sgn(tol) < 0) throw std::invalid_argument("negative membership tolerance");
  if (a.is_polyhedral()) return *a.contains_exact(z);
  if (a.is_empty()) return false;
  for (const auto& d : a.oracle().grid) {
    Extended s = a.support(d);
    if (s.is_minus_infinity()) return false;
    if (s.is_finite() && dot(d, z) > s.value() + tol) return false;
  }
  return true;
}

inline UpperSet minkowski_sum(const UpperSet& a, const UpperSet& b) {
  require_same_cone(a, b);
  if (a.is_empty() || b.is_empty()) return UpperSet::empty(a.cone_ptr());
  if (!a.is_convex() || !b.is_convex()) throw std::invalid_argument("minkowski_sum of nonconvex unions");
  if (a.is_polyhedral() && b.is_polyhedral())
    return UpperSet::from_polyhedron(minkowski_sum(a.as_polyhedron(), b.as_polyhedron()), a.cone_ptr());
  SupportOracle o;
  o.support = [a, b](const Vec& d) { return a.support(d) + b.support(d); };
  o.grid = a.support_grid();
  for (const auto& d : b.support_grid())
    if (std::find(o.grid.begin(), o.grid.end(), d) == o.grid.end()) o.grid.push_back(d);
  o.label = "sum";
  return UpperSet::from_oracle(std::move(o), a.cone_ptr());
}

// tA with the convention 0·A = C for nonempty A.
inline UpperSet scale(const UpperSet& a, const Rational& t) {
  if (sgn(t) < 0) throw std::invalid_argument("negative scale factor");
  if (a.is_empty()) return a;
  if (sgn(t) == 0) return UpperSet::from_polyhedron(a.cone().as_polyhedron(), a.cone_ptr());
  if (t == 1) return a;
  if (a.is_polyhedral()) {
    UpperSet::Pieces pieces;
    for (const auto& p : a.pieces()) {
      std::vector<Halfspace> hs;
      for (const auto& h : p.halfspaces()) hs.push_back({h.normal, t * h.offset});
      pieces.emplace_back(p.dim(), std::move(hs));
    }
    return UpperSet::from_union(std::move(pieces), a.cone_ptr());
  }
  const SupportOracle& base = a.oracle();
  SupportOracle o;
  o.support = [f = base.support, t](const Vec& d) { return scale(t, f(d)); };
  if (base.contains)
    o.contains = [f = base.contains, t](const Vec& z) { return f((Rational(1) / t) * z); };
  if (base.distance)
    o.distance = [f = base.distance, t](const Vec& z) {
      return t.get_d() * f((Rational(1) / t) * z);
    };
  o.grid = base.grid;
  o.label = base.label;
  return UpperSet::from_oracle(std::move(o), a.cone_ptr());
}

}  // namespace upperset
