#pragma once

// Point-wise continuity checkers. Each verdict is decided in three layers:
// exact local certificates (single polyhedral graphs in any dimension, and
// one-dimensional domains through the side model), then falsifiers that must
// produce a witness at every grid level, and otherwise inconclusive.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "upperset/hausdorff.hpp"
#include "upperset/local_model.hpp"
#include "upperset/scalarize.hpp"
#include "upperset/setmap.hpp"
#include "upperset/upper_set.hpp"
#include "upperset/verdict.hpp"

namespace upperset {

struct CheckerConfig {
  Rational delta0 = 1;
  Rational rho = make_rational(1, 2);
  int levels = 12;  // X radii delta0 * rho^k, k = 0..levels
  int sub_levels = 6;  // further rho-steps searched inside each level
  int exact_sub_levels = 40;  // same, when an exact analysis already predicts a failure
  std::vector<Rational> z_radii{Rational(1), make_rational(1, 4), make_rational(1, 16)};
  std::size_t direction_samples = 64;  // default base size
  int probe_depth = 40;  // dyadic refinement depth of probe directions towards C^- generators
  double tol = 1e-9;
  Rational window = 10;  // Z box [-window, window]^m
  int lattice_radius = 4;  // integer candidate points z in [-r, r]^m
  std::size_t threads = 0;  // 0: UPPERSET_THREADS, else hardware concurrency

  void validate() const {
    if (sgn(delta0) <= 0) throw std::invalid_argument("delta0 must be positive");
    if (sgn(rho) <= 0 || rho >= 1) throw std::invalid_argument("rho must lie in (0,1)");
    if (levels < 1) throw std::invalid_argument("at least one grid level is required");
    if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
    for (const auto& r : z_radii)
      if (sgn(r) <= 0) throw std::invalid_argument("z radii must be positive");
  }

  Rational delta(int k) const {
    Rational d = delta0;
    for (int i = 0; i < k; ++i) d *= rho;
    return d;
  }
};

enum class Notion {
  uc,
  lc,
  huc,
  hlc,
  eff,
  lba,
  lls,
  uls,
  cminus_usc,
  cminus_lsc,
  uniform_usc,
  uniform_lsc,
  graph_interior
};

inline constexpr std::size_t kNotionCount = 13;

inline constexpr std::array<Notion, kNotionCount> all_notions() {
  return {Notion::uc,         Notion::lc,         Notion::huc,         Notion::hlc,         Notion::eff,
          Notion::lba,        Notion::lls,        Notion::uls,         Notion::cminus_usc,  Notion::cminus_lsc,
          Notion::uniform_usc, Notion::uniform_lsc, Notion::graph_interior};
}

inline const char* to_string(Notion n) {
  static const char* names[] = {"uc",         "lc",         "huc",         "hlc",         "eff",
                                "lba",        "lls",        "uls",         "cminus_usc",  "cminus_lsc",
                                "uniform_usc", "uniform_lsc", "graph_interior"};
  return names[static_cast<std::size_t>(n)];
}

inline Notion notion_from_string(const std::string& s) {
  for (auto n : all_notions())
    if (s == to_string(n)) return n;
  throw std::invalid_argument("unknown continuity notion: " + s);
}

enum class SemiMode { usc, lsc };

inline const char* to_string(SemiMode m) { return m == SemiMode::usc ? "usc" : "lsc"; }

struct VerdictMatrix {
  Vec x0;
  std::array<Verdict, kNotionCount> entries;
  std::vector<std::string> artifacts;  // implication violations found and downgraded

  Verdict& operator[](Notion n) { return entries[static_cast<std::size_t>(n)]; }
  const Verdict& operator[](Notion n) const { return entries[static_cast<std::size_t>(n)]; }
};

// Everything about f near x0 that several checkers share.
struct LocalAnalysis {
  const SetValuedMap* f;
  Vec x0;
  CheckerConfig cfg;
  LocalSet f0;
  bool int_c = false;
  const AffineHalfspaceBody* poly = nullptr;  // single polyhedral graph
  bool in_int_dom = false;  // polyhedral graph: x0 in Int(dom f)
  std::vector<SideModel> sides;  // one-dimensional domain: the two rays out of x0
  bool sides_ok = false;
  Mat xdirs;  // sampling directions in X, sup-norm 1
  Mat probes;  // directions in C^- used for support comparisons
  std::vector<Extended> probe_f0;  // σ_{f(x0)} on the probes

  LocalAnalysis(const SetValuedMap& map, Vec x, CheckerConfig c)
      : f(&map), x0(std::move(x)), cfg(std::move(c)), f0(local_value(map, x0)) {}

  const SetValuedMap& map() const { return *f; }
  std::size_t n() const { return f->domain_dim(); }
  std::size_t m() const { return f->value_dim(); }
  bool empty0() const { return f0.set.is_empty(); }
};

// Base directions followed by g_a + 2^-j g_b (j >= 0) for pairs of C^- generators, by depth.
inline Mat probe_directions(const Cone& c, const Mat& base, int depth) {
  Mat out = base;
  auto add = [&](Vec v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  Mat gens = dual_direction_fan(c, 0);
  Rational step = 2;
  for (int j = 0; j <= depth; ++j) {
    step /= 2;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b)
        if (a != b && !is_zero(gens[a] + gens[b])) add(gens[a] + step * gens[b]);
  }
  return out;
}

// ±e_i, plus all sign vectors for n <= 3.
inline Mat sampling_directions(std::size_t n) {
  Mat out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(unit_vector(n, i));
    out.push_back(unit_vector(n, i, -1));
  }
  if (n >= 2 && n <= 3) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? Rational(-1) : Rational(1);
      out.push_back(v);
    }
  }
  return out;
}

inline bool interior_of_polyhedron(const Polyhedron& p, const Vec& x) {
  for (const auto& h : p.halfspaces()) {
    if (is_zero(h.normal)) {
      if (sgn(h.offset) > 0) return false;
      continue;
    }
    if (dot(h.normal, x) <= h.offset) return false;
  }
  return true;
}

inline LocalAnalysis analyze(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg, const Mat& base) {
  cfg.validate();
  if (x0.size() != f.domain_dim()) throw std::invalid_argument("x0 has wrong dimension");
  LocalAnalysis a(f, x0, cfg);
  a.int_c = f.cone().has_interior();
  a.poly = polyhedral_graph_body(f);
  if (a.poly) a.in_int_dom = interior_of_polyhedron(domain_polyhedron(f), x0);
  if (f.domain_dim() == 1) {
    a.sides = {side_model(f, x0, {Rational(1)}), side_model(f, x0, {Rational(-1)})};
    a.sides_ok = a.sides[0].supported() && a.sides[1].supported();
  }
  a.xdirs = sampling_directions(f.domain_dim());
  a.probes = probe_directions(f.cone(), base, cfg.probe_depth);
  for (const auto& d : a.probes) a.probe_f0.push_back(a.f0.set.support(d));
  return a;
}

// ---------------------------------------------------------------------------
// Falsifiers. Each returns a witness holding one point per grid level k, within
// delta_k of x0 in the sup norm, or nothing.

template <class P>
using LevelHits = std::vector<std::pair<Vec, P>>;

template <class P>
std::optional<LevelHits<P>> level_search(const LocalAnalysis& a, int sub,
                                         const std::function<std::optional<P>(const Vec&)>& pred) {
  LevelHits<P> hits;
  for (int k = 0; k <= a.cfg.levels; ++k) {
    Rational d = a.cfg.delta(k);
    bool found = false;
    for (int j = 0; j <= sub && !found; ++j, d *= a.cfg.rho) {
      for (const auto& v : a.xdirs) {
        Vec x = a.x0 + d * v;
        if (auto p = pred(x)) {
          hits.emplace_back(std::move(x), std::move(*p));
          found = true;
          break;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return hits;
}

template <class P>
std::vector<Vec> hit_points(const LevelHits<P>& h) {
  std::vector<Vec> out;
  for (const auto& [x, p] : h) out.push_back(x);
  return out;
}

inline Witness empty_at_x0(const LocalAnalysis& a) {
  Witness w;
  w.kind = "empty-value";
  w.x = a.x0;
  w.note = "f(x0) is empty";
  return w;
}

inline std::optional<Witness> empty_sequence(const LocalAnalysis& a, int sub) {
  auto hits = level_search<bool>(a, sub, [&](const Vec& x) -> std::optional<bool> {
    if (evaluate(a.map(), x).is_empty()) return true;
    return std::nullopt;
  });
  if (!hits) return std::nullopt;
  Witness w;
  w.kind = "empty-sequence";
  w.x = a.x0;
  w.sequence = hit_points(*hits);
  w.note = "f is empty at one point of every level";
  return w;
}

// Every point of v lies farther than r from z (exact for polyhedral values).
inline bool farther_than(const UpperSet& v, const Vec& z, const Rational& r, double tol) {
  if (v.is_empty()) return true;
  if (v.is_polyhedral()) {
    for (const auto& p : v.pieces())
      if (squared_distance(p, z) <= r * r) return false;
    return true;
  }
  return distance_to(v, z) > r.get_d() + tol;
}

// Integer points of [-R, R]^m whose exact membership in s equals `inside`.
inline std::vector<Vec> lattice_candidates(const LocalAnalysis& a, const UpperSet& s, bool inside, std::size_t limit) {
  std::vector<Vec> out;
  const long r = a.cfg.lattice_radius;
  Vec lo(a.m(), Rational(-r)), hi(a.m(), Rational(r));
  for (auto& z : detail::lattice_points(lo, hi, static_cast<std::size_t>(2 * r))) {
    auto c = s.contains_exact(z);
    if (c && *c == inside) out.push_back(std::move(z));
    if (out.size() >= limit) break;
  }
  return out;
}

inline std::vector<Vec> points_of_f0(const LocalAnalysis& a) {
  std::vector<Vec> out;
  if (a.empty0()) return out;
  if (a.f0.set.is_polyhedral())
    for (const auto& p : a.f0.set.pieces())
      for (auto& v : to_vrep(p).points) out.push_back(std::move(v));
  for (auto& z : lattice_candidates(a, a.f0.set, true, 24)) out.push_back(std::move(z));
  return out;
}

// Some z0 in f(x0) and radius r with d(z0, f(x_k)) > r at every level.
inline std::optional<Witness> distance_gap(const LocalAnalysis& a, int sub) {
  for (const auto& z0 : points_of_f0(a)) {
    for (const auto& r : a.cfg.z_radii) {
      auto hits = level_search<bool>(a, sub, [&](const Vec& x) -> std::optional<bool> {
        if (farther_than(evaluate(a.map(), x), z0, r, a.cfg.tol)) return true;
        return std::nullopt;
      });
      if (!hits) continue;
      Witness w;
      w.kind = "distance";
      w.x = a.x0;
      w.z = z0;
      w.radius = r;
      w.sequence = hit_points(*hits);
      w.note = "z lies in f(x0) and every f(x_k) misses the ball of the given radius around z";
      return w;
    }
  }
  return std::nullopt;
}

// Some z0 outside f(x0) lying in f(x_k) at every level.
inline std::optional<Witness> membership_escape(const LocalAnalysis& a, int sub) {
  for (const auto& z0 : lattice_candidates(a, a.f0.set, false, 1u << 12)) {
    auto hits = level_search<bool>(a, sub, [&](const Vec& x) -> std::optional<bool> {
      auto c = evaluate(a.map(), x).contains_exact(z0);
      if (c && *c) return true;
      return std::nullopt;
    });
    if (!hits) continue;
    Witness w;
    w.kind = "escape-point";
    w.x = a.x0;
    w.z = z0;
    w.sequence = hit_points(*hits);
    w.note = "z lies outside f(x0) but inside every f(x_k)";
    if (a.f0.set.is_polyhedral() && !a.empty0()) {
      std::optional<Rational> sq;
      for (const auto& p : a.f0.set.pieces()) {
        Rational d = squared_distance(p, z0);
        if (!sq || d < *sq) sq = d;
      }
      for (const auto& r : a.cfg.z_radii)
        if (r * r < *sq) {
          w.radius = r;
          break;
        }
    }
    return w;
  }
  return std::nullopt;
}

// (p - q) > r |d| in the extended reals, exactly.
inline bool gap_exceeds(const Extended& p, const Extended& q, const Rational& r, const Vec& d) {
  if (q.is_plus_infinity() || p.is_minus_infinity()) return false;
  if (p.is_plus_infinity() || q.is_minus_infinity()) return true;
  Rational diff = p.value() - q.value();
  return sgn(diff) > 0 && diff * diff > r * r * dot(d, d);
}

enum class Excess { up, down };  // e(f(x), f(x0)) or e(f(x0), f(x))

// Per-level direction d_k with σ_{f(x_k)}(d_k) - σ_{f(x0)}(d_k) > r |d_k| (up) or
// the reverse (down); either gives an excess larger than r.
inline std::optional<Witness> support_excess(const LocalAnalysis& a, Excess side) {
  for (const auto& r : a.cfg.z_radii) {
    auto hits = level_search<Vec>(a, 0, [&](const Vec& x) -> std::optional<Vec> {
      auto v = evaluate(a.map(), x);
      for (std::size_t i = 0; i < a.probes.size(); ++i) {
        const auto& d = a.probes[i];
        Extended sx = v.support(d);
        bool hit = side == Excess::up ? gap_exceeds(sx, a.probe_f0[i], r, d) : gap_exceeds(a.probe_f0[i], sx, r, d);
        if (hit) return d;
      }
      return std::nullopt;
    });
    if (!hits) continue;
    Witness w;
    w.kind = side == Excess::up ? "support-excess-up" : "support-excess-down";
    w.x = a.x0;
    w.radius = r;
    for (const auto& [x, d] : *hits) {
      w.sequence.push_back(x);
      w.directions.push_back(d);
    }
    w.note = side == Excess::up ? "sigma_{f(x_k)}(d_k) - sigma_{f(x0)}(d_k) > radius |d_k|"
                                : "sigma_{f(x0)}(d_k) - sigma_{f(x_k)}(d_k) > radius |d_k|";
    return w;
  }
  return std::nullopt;
}

// Vertices of the sup-norm box of radius d around x0 (cross-polytope for n > 4).
inline std::vector<Vec> neighborhood_sample(const LocalAnalysis& a, const Rational& d) {
  std::vector<Vec> out;
  const std::size_t n = a.n();
  if (n <= 4) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -d : d;
      out.push_back(a.x0 + v);
    }
  } else {
    out.push_back(a.x0);
    for (const auto& v : sampling_directions(n)) out.push_back(a.x0 + d * v);
  }
  return out;
}

// max t <= 1 such that some z has N z - t|N|_1 >= b at every sample point
// (t = -inf when infeasible). Needs single-polyhedron values.
inline std::optional<Extended> common_margin(const SetValuedMap& f, const std::vector<Vec>& xs, bool with_margin) {
  const std::size_t m = f.value_dim();
  LinearProgram lp;
  lp.num_vars = m + 1;
  lp.objective.assign(m + 1, Rational(0));
  if (with_margin) lp.objective[m] = 1;
  for (const auto& x : xs) {
    auto v = evaluate(f, x);
    if (v.is_empty()) return Extended::minus_infinity();
    if (!v.is_polyhedral() || v.pieces().size() != 1) return std::nullopt;
    for (const auto& h : v.pieces().front().halfspaces()) {
      Vec row = h.normal;
      row.push_back(with_margin ? -norm1(h.normal) : Rational(0));
      lp.add(std::move(row), Sense::greater_equal, h.offset);
    }
  }
  lp.add(unit_vector(m + 1, m), Sense::less_equal, Rational(1));
  auto r = lp_solve(lp);
  if (r.status == LpStatus::infeasible) return Extended::minus_infinity();
  if (!with_margin) return Extended(0);
  return Extended(r.value);
}

// At every level no point is common to the values on the sampled neighborhood
// (with_margin: no common ball of positive radius).
inline std::optional<Witness> no_common_point(const LocalAnalysis& a, bool with_margin) {
  Witness w;
  w.kind = with_margin ? "no-interior-margin" : "no-common-point";
  w.x = a.x0;
  for (int k = 0; k <= a.cfg.levels; ++k) {
    auto xs = neighborhood_sample(a, a.cfg.delta(k));
    auto t = common_margin(a.map(), xs, with_margin);
    if (!t) return std::nullopt;
    bool blocked = with_margin ? *t <= Extended(0) : t->is_minus_infinity();
    if (!blocked) return std::nullopt;
    w.groups.push_back(std::move(xs));
  }
  w.note = with_margin ? "at every level the values on the sample share no ball of positive radius"
                       : "at every level the values on the sample have empty intersection";
  return w;
}

// φ_{(f,z*)}(x_k) >= T (usc) or <= T (lsc) at every level, with T beyond φ(x0).
inline std::optional<Witness> scalar_violation(const LocalAnalysis& a, const Vec& zstar, SemiMode mode,
                                               const Rational& threshold, int sub) {
  auto hits = level_search<bool>(a, sub, [&](const Vec& x) -> std::optional<bool> {
    Extended phi = -evaluate(a.map(), x).support(zstar);
    bool hit = mode == SemiMode::usc ? phi >= Extended(threshold) : phi <= Extended(threshold);
    if (hit) return true;
    return std::nullopt;
  });
  if (!hits) return std::nullopt;
  Witness w;
  w.kind = mode == SemiMode::usc ? "scalar-usc" : "scalar-lsc";
  w.x = a.x0;
  w.direction = zstar;
  w.epsilon = threshold;
  w.sequence = hit_points(*hits);
  w.note = mode == SemiMode::usc ? "phi(x_k) >= epsilon > phi(x0) at every level"
                                 : "phi(x_k) <= epsilon < phi(x0) at every level";
  return w;
}

// Thresholds strictly beyond φ(x0) in the failing direction, nearest first.
inline std::vector<Rational> scalar_thresholds(const Extended& phi0, SemiMode mode) {
  std::vector<Rational> out;
  const int s = mode == SemiMode::usc ? 1 : -1;
  if (phi0.is_finite()) {
    for (long e : {1, 4, 16, 64}) out.push_back(phi0.value() + Rational(s) * make_rational(1, e));
  } else if ((mode == SemiMode::usc && phi0.is_minus_infinity()) || (mode == SemiMode::lsc && phi0.is_plus_infinity())) {
    out.push_back(Rational(-s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact local decisions.

struct Decision {
  std::optional<bool> value;  // nullopt: not decided exactly
  std::string basis;
  std::optional<Witness> certificate;  // positive certificate, when there is one

  Decision() = default;
  Decision(std::optional<bool> v, std::string b, std::optional<Witness> c = std::nullopt)
      : value(v), basis(std::move(b)), certificate(std::move(c)) {}
};

inline Decision undecided() { return {}; }

// Folds per-side answers: any no gives false, else any unknown gives nullopt.
inline std::optional<bool> fold(const std::vector<Tri>& parts) {
  bool unknown = false;
  for (auto t : parts) {
    if (t == Tri::no) return false;
    if (t == Tri::unknown) unknown = true;
  }
  if (unknown) return std::nullopt;
  return true;
}

inline Tri tri(std::optional<bool> b) {
  if (!b) return Tri::unknown;
  return *b ? Tri::yes : Tri::no;
}

// Polyhedral graph {N z >= q + L x}: max t <= 1 such that some z satisfies all
// rows over the sup-norm box of radius t around x0 (graph: around (x0, z) too).
inline std::optional<std::pair<Rational, Vec>> polyhedral_margin(const LocalAnalysis& a, bool graph) {
  const auto& b = *a.poly;
  const std::size_t m = a.m();
  LinearProgram lp;
  lp.num_vars = m + 1;
  lp.objective = unit_vector(m + 1, m);
  for (std::size_t i = 0; i < b.normals.size(); ++i) {
    Vec row = b.normals[i];
    Rational w = norm1(b.coupling[i]) + (graph ? norm1(b.normals[i]) : Rational(0));
    row.push_back(-w);
    lp.add(std::move(row), Sense::greater_equal, b.offsets[i] + dot(b.coupling[i], a.x0));
  }
  lp.add(unit_vector(m + 1, m), Sense::less_equal, Rational(1));
  auto r = lp_solve(lp);
  if (r.status != LpStatus::optimal) return std::nullopt;
  return std::make_pair(r.value, Vec(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(m)));
}

inline Decision margin_decision(const LocalAnalysis& a, bool graph) {
  auto mg = polyhedral_margin(a, graph);
  if (mg && sgn(mg->first) > 0) {
    Witness w;
    w.kind = graph ? "graph-ball" : "common-point";
    w.x = a.x0;
    w.z = mg->second;
    w.radius = mg->first;
    w.note = graph ? "the sup-norm ball of the given radius around (x0, z) lies in gr f"
                   : "z lies in f(x) for every x in the sup-norm ball of the given radius around x0";
    return {true, graph ? "polyhedral graph: LP margin of a ball around (x0, z) is positive"
                        : "polyhedral graph: LP margin of a common point is positive",
            std::move(w)};
  }
  return {false, graph ? "polyhedral graph: no ball around any (x0, z) fits in the graph"
                       : "polyhedral graph: no point is common to the values on any box around x0"};
}

inline std::optional<bool> closed_interior_rule(const LocalAnalysis& a) {
  return a.empty0() || a.in_int_dom;
}

inline const char* interior_rule_basis(const LocalAnalysis& a) {
  if (a.empty0()) return "polyhedral graph: x0 lies outside the closed domain";
  if (a.in_int_dom) return "polyhedral graph: x0 in the interior of dom f (Hausdorff-Lipschitz values)";
  return "polyhedral graph: x0 on the boundary of dom f";
}

// Upper continuity in the Hausdorff sense (also used for u.c. over the enlargement base).
inline Decision decide_huc(const LocalAnalysis& a) {
  if (a.poly) return {true, "polyhedral graph: Hausdorff upper continuous on the closed domain"};
  if (!a.sides_ok) return undecided();
  std::vector<Tri> parts;
  for (const auto& s : a.sides) {
    if (s.empty) continue;
    if (a.empty0()) {
      parts.push_back(Tri::no);
      continue;
    }
    if (!s.limit) {
      parts.push_back(Tri::unknown);
      continue;
    }
    auto sub = exact_subset(*s.limit, a.f0);
    if (!sub) parts.push_back(Tri::unknown);
    else if (!*sub) parts.push_back(Tri::no);
    else parts.push_back(s.upper_h == Tri::yes ? Tri::yes : Tri::unknown);
  }
  return {fold(parts), "side model: side limits inside f(x0) with Hausdorff upper convergence"};
}

inline Decision decide_lls(const LocalAnalysis& a) {
  if (a.poly) return {true, "polyhedral graph: closed graph"};
  if (!a.sides_ok) return undecided();
  std::vector<Tri> parts;
  for (const auto& s : a.sides) {
    if (s.empty) continue;
    if (!s.limit) {
      parts.push_back(Tri::unknown);
      continue;
    }
    parts.push_back(tri(exact_subset(*s.limit, a.f0)));
  }
  return {fold(parts), "side model: outer limits of both sides inside f(x0)"};
}

inline Decision decide_lc(const LocalAnalysis& a, bool hausdorff) {
  if (a.poly) return {closed_interior_rule(a), interior_rule_basis(a)};
  if (!a.sides_ok) return undecided();
  if (a.empty0()) return {true, "f(x0) is empty"};
  std::vector<Tri> parts;
  for (const auto& s : a.sides) {
    if (s.empty) {
      parts.push_back(Tri::no);
      continue;
    }
    if (!s.limit) {
      parts.push_back(Tri::unknown);
      continue;
    }
    Tri sub = tri(exact_subset(a.f0, *s.limit));
    if (hausdorff && sub == Tri::yes && s.lower_h != Tri::yes) sub = Tri::unknown;
    parts.push_back(sub);
  }
  return {fold(parts), hausdorff ? "side model: f(x0) inside both side limits with Hausdorff lower convergence"
                                 : "side model: f(x0) inside the inner limits of both sides"};
}

// Values near x0 meet one bounded set, side by side.
inline Decision decide_eff(const LocalAnalysis& a) {
  if (a.empty0()) return {false, "f(x0) is empty"};
  if (a.poly) return {a.in_int_dom, interior_rule_basis(a)};
  if (!a.sides_ok) return undecided();
  std::vector<Tri> parts;
  const std::size_t m = a.m();
  for (const auto& s : a.sides) {
    if (s.empty) {
      parts.push_back(Tri::no);
      continue;
    }
    const auto* af = std::get_if<AffineHalfspaceBody>(s.leaf);
    if (!af || !af->moving_normals()) {
      parts.push_back(Tri::yes);
      continue;
    }
    auto lp = germ_value_lp(*af, a.x0, s.u, m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Germ> e(m, Germ(0));
      e[j] = Germ(1);
      lp.add(e, Sense::greater_equal, Germ(Rational(-a.cfg.window)));
      lp.add(e, Sense::less_equal, Germ(a.cfg.window));
    }
    parts.push_back(lp_feasible(lp) ? Tri::yes : Tri::unknown);
  }
  return {fold(parts), "side model: values on both sides eventually meet the Z window"};
}

inline Decision decide_lba(const LocalAnalysis& a) {
  if (a.empty0()) return {false, "f(x0) is empty"};
  if (a.poly) return margin_decision(a, false);
  auto eff = decide_eff(a);
  if (eff.value && !*eff.value) return {false, "not efficient, hence not lattice-bounded above"};
  if (a.int_c && eff.value) return {true, "interior of C: efficiency gives a common point"};
  return undecided();
}

inline Decision decide_uls(const LocalAnalysis& a) {
  if (a.empty0()) return {true, "f(x0) is empty"};
  if (a.poly) {
    auto d = margin_decision(a, false);
    if (*d.value) d.basis = "convex and lattice-bounded above at x0 in dom f";
    return d;
  }
  auto lc = decide_lc(a, false);
  if (lc.value && !*lc.value) return {false, "not lower continuous"};
  if (a.int_c && lc.value) return {true, "interior of C: lower continuity gives upper lattice-semicontinuity"};
  return undecided();
}

inline Decision decide_graph_interior(const LocalAnalysis& a) {
  if (a.empty0()) return {false, "f(x0) is empty"};
  if (a.poly) return margin_decision(a, true);
  auto lba = decide_lba(a);
  if (lba.value && !*lba.value) return {false, "not lattice-bounded above"};
  if (a.int_c && lba.value) return {true, "interior of C: a common point yields a graph interior point"};
  return undecided();
}

// Strictly between p and l (p != l), preferring a midpoint.
inline Rational between(const Extended& p, const Extended& l) {
  if (p.is_finite() && l.is_finite()) return (p.value() + l.value()) / 2;
  if (p.is_finite()) return p.value() + (l > p ? Rational(1) : Rational(-1));
  if (l.is_finite()) return l.value() + (p > l ? Rational(1) : Rational(-1));
  return 0;
}

struct ScalarDecision {
  Tri value = Tri::yes;
  Rational threshold;  // on failure: strictly between φ(x0) and the offending side limit
};

// φ(x) = -σ_{f(x)}(z*) along both sides, from exact support limits.
inline ScalarDecision scalar_side_decision(const LocalAnalysis& a, const Vec& zstar, SemiMode mode) {
  Extended phi0 = -a.f0.set.support(zstar);
  ScalarDecision out;
  if (mode == SemiMode::usc ? phi0.is_plus_infinity() : phi0.is_minus_infinity()) return out;
  for (const auto& s : a.sides) {
    Extended lim = -side_support_limit(s, a.x0, zstar, a.map().cone());
    bool bad = mode == SemiMode::usc ? lim > phi0 : lim < phi0;
    if (!bad) continue;
    out.value = Tri::no;
    out.threshold = between(phi0, lim);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkers on a shared analysis.

using Falsifier = std::function<std::optional<Witness>()>;

inline Verdict settle(const LocalAnalysis& a, const Decision& d, const std::vector<Falsifier>& falsifiers) {
  const int K = a.cfg.levels;
  if (d.value && *d.value) return Verdict::holds(d.basis, K, d.certificate);
  for (const auto& fz : falsifiers)
    if (auto w = fz()) {
      std::string basis = d.value ? d.basis : "counterexample at every grid level";
      return Verdict::fails(std::move(*w), K, basis);
    }
  if (d.value) return Verdict::inconclusive(K, d.basis + "; no witness found at the examined resolution");
  return Verdict::inconclusive(K);
}

inline int search_depth(const LocalAnalysis& a, const Decision& d) {
  return d.value ? a.cfg.exact_sub_levels : a.cfg.sub_levels;
}

inline Falsifier when_nonempty0(const LocalAnalysis& a, Falsifier fz) {
  return [&a, fz] { return a.empty0() ? std::nullopt : fz(); };
}

inline Falsifier empty_x0(const LocalAnalysis& a) {
  return [&a]() -> std::optional<Witness> {
    if (a.empty0()) return empty_at_x0(a);
    return std::nullopt;
  };
}

inline Verdict uc_verdict(const LocalAnalysis& a, bool hausdorff) {
  auto d = decide_huc(a);
  if (!hausdorff && !d.basis.empty()) d.basis += " (u.c. relative to the enlargement base)";
  return settle(a, d,
                {[&] { return support_excess(a, Excess::up); },
                 [&]() -> std::optional<Witness> {
                   auto w = membership_escape(a, search_depth(a, d));
                   if (w && hausdorff && !w->radius) return std::nullopt;
                   return w;
                 }});
}

inline Verdict lls_verdict(const LocalAnalysis& a) {
  auto d = decide_lls(a);
  return settle(a, d, {[&] { return membership_escape(a, search_depth(a, d)); }});
}

inline Verdict lc_verdict(const LocalAnalysis& a, bool hausdorff) {
  auto d = decide_lc(a, hausdorff);
  std::vector<Falsifier> fz{when_nonempty0(a, [&] { return empty_sequence(a, search_depth(a, d)); }),
                            when_nonempty0(a, [&] { return distance_gap(a, a.cfg.sub_levels); })};
  if (hausdorff) fz.push_back(when_nonempty0(a, [&] { return support_excess(a, Excess::down); }));
  return settle(a, d, fz);
}

inline Verdict eff_verdict(const LocalAnalysis& a) {
  auto d = decide_eff(a);
  return settle(a, d, {empty_x0(a), [&] { return empty_sequence(a, search_depth(a, d)); }});
}

inline Verdict lba_verdict(const LocalAnalysis& a) {
  auto d = decide_lba(a);
  return settle(a, d,
                {empty_x0(a), [&] { return empty_sequence(a, search_depth(a, d)); },
                 [&] { return no_common_point(a, false); }});
}

inline Verdict uls_verdict(const LocalAnalysis& a) {
  auto d = decide_uls(a);
  auto common = [&]() -> std::optional<Witness> {
    auto w = no_common_point(a, false);
    if (!w) return w;
    auto pts = points_of_f0(a);
    if (pts.empty()) return std::nullopt;
    w->z = pts.front();
    w->radius = a.cfg.z_radii.front();
    w->note += "; in particular none near z in f(x0)";
    return w;
  };
  return settle(a, d,
                {when_nonempty0(a, [&] { return empty_sequence(a, search_depth(a, d)); }), when_nonempty0(a, common),
                 when_nonempty0(a, [&] { return distance_gap(a, a.cfg.sub_levels); })});
}

inline Verdict graph_interior_verdict(const LocalAnalysis& a) {
  auto d = decide_graph_interior(a);
  return settle(a, d,
                {empty_x0(a), [&] { return empty_sequence(a, search_depth(a, d)); },
                 [&] { return no_common_point(a, true); }});
}

// Per-direction scalar semicontinuity over the given directions.
inline Verdict scalar_verdict(const LocalAnalysis& a, const Mat& dirs, SemiMode mode) {
  const int K = a.cfg.levels;
  for (const auto& z : dirs) require_dual_direction(a.map().cone(), z);
  if (a.poly) {
    bool ok = mode == SemiMode::lsc || *closed_interior_rule(a);
    std::string basis = mode == SemiMode::lsc ? "polyhedral graph: scalarizations are closed polyhedral functions"
                                              : interior_rule_basis(a);
    if (ok) return Verdict::holds(basis + " (all directions)", K);
    for (const auto& z : dirs)
      for (const auto& t : scalar_thresholds(-a.f0.set.support(z), mode))
        if (auto w = scalar_violation(a, z, mode, t, a.cfg.exact_sub_levels)) return Verdict::fails(*w, K, basis);
    return Verdict::inconclusive(K, basis + "; no witness found at the examined resolution");
  }
  if (a.sides_ok) {
    for (const auto& z : dirs) {
      auto sd = scalar_side_decision(a, z, mode);
      if (sd.value != Tri::no) continue;
      std::string basis = "side model: exact one-sided limit of the scalarization violates the bound";
      if (auto w = scalar_violation(a, z, mode, sd.threshold, a.cfg.exact_sub_levels))
        return Verdict::fails(*w, K, basis);
      return Verdict::inconclusive(K, basis + "; no witness found at the examined resolution");
    }
    return Verdict::holds("side model: exact one-sided limits of every base scalarization", K);
  }
  for (const auto& z : dirs)
    for (const auto& t : scalar_thresholds(-a.f0.set.support(z), mode))
      if (auto w = scalar_violation(a, z, mode, t, a.cfg.sub_levels)) return Verdict::fails(*w, K);
  return Verdict::inconclusive(K);
}

inline std::optional<std::string> base_problem(const DirectionBase& base) {
  auto cert = certify_base(base);
  if (!cert.generates_dual_cone) return "base does not generate C^-";
  if (!cert.sup_finite) return "base is unbounded";
  if (!cert.inf_sup_positive) return "base contains the zero direction";
  return std::nullopt;
}

// Uniform semicontinuity over the unit directions of the cone generated by the base.
inline Verdict uniform_verdict(const LocalAnalysis& a, const DirectionBase& base, SemiMode mode) {
  if (auto p = base_problem(base)) return Verdict::inconclusive(0, "base not certified: " + *p);
  Decision d;
  if (a.poly) {
    if (mode == SemiMode::usc) d = {closed_interior_rule(a), interior_rule_basis(a)};
    else d = {true, "polyhedral graph: Hausdorff upper continuous on the closed domain"};
  } else if (a.sides_ok) {
    std::vector<Tri> parts;
    for (const auto& s : a.sides) {
      if (mode == SemiMode::usc) {
        if (a.empty0()) break;
        if (s.empty) {
          parts.push_back(Tri::no);
          continue;
        }
        if (!s.limit) {
          parts.push_back(Tri::unknown);
          continue;
        }
        Tri sub = tri(exact_subset(a.f0, *s.limit));
        parts.push_back(sub == Tri::yes && s.lower_h != Tri::yes ? Tri::unknown : sub);
      } else {
        if (s.empty) continue;
        if (a.empty0()) {
          parts.push_back(Tri::no);
          continue;
        }
        if (!s.limit) {
          parts.push_back(Tri::unknown);
          continue;
        }
        Tri sub = tri(exact_subset(*s.limit, a.f0));
        parts.push_back(sub == Tri::yes && s.upper_h != Tri::yes ? Tri::unknown : sub);
      }
    }
    d = {fold(parts), mode == SemiMode::usc ? "side model: Hausdorff lower convergence to a superset of f(x0)"
                                            : "side model: Hausdorff upper convergence to a subset of f(x0)"};
  }
  const Mat& dirs = base.directions();
  return settle(a, d,
                {[&]() -> std::optional<Witness> {
                   auto v = scalar_verdict(a, dirs, mode);
                   if (v.status == Status::fails) return v.witness;
                   return std::nullopt;
                 },
                 when_nonempty0(a, [&] {
                   auto w = support_excess(a, mode == SemiMode::usc ? Excess::down : Excess::up);
                   if (w) w->kind = mode == SemiMode::usc ? "uniform-usc" : "uniform-lsc";
                   return w;
                 })});
}

// ---------------------------------------------------------------------------
// Public checkers.

inline DirectionBase default_base(const SetValuedMap& f, const CheckerConfig& cfg) {
  return DirectionBase::fan(f.cone_ptr(), cfg.direction_samples);
}

inline LocalAnalysis analyze(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg) {
  return analyze(f, x0, cfg, default_base(f, cfg).directions());
}

inline Verdict check_uc(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return uc_verdict(analyze(f, x0, cfg), false);
}
inline Verdict check_huc(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return uc_verdict(analyze(f, x0, cfg), true);
}
inline Verdict check_lc(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return lc_verdict(analyze(f, x0, cfg), false);
}
inline Verdict check_hlc(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return lc_verdict(analyze(f, x0, cfg), true);
}
inline Verdict check_eff(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return eff_verdict(analyze(f, x0, cfg));
}
inline Verdict check_lba(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return lba_verdict(analyze(f, x0, cfg));
}
inline Verdict check_lls(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return lls_verdict(analyze(f, x0, cfg));
}
inline Verdict check_uls(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return uls_verdict(analyze(f, x0, cfg));
}
inline Verdict graph_interior_witness(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return graph_interior_verdict(analyze(f, x0, cfg));
}

inline Verdict check_scalar_semicontinuity(const SetValuedMap& f, const Vec& x0, const DirectionBase& base,
                                           const CheckerConfig& cfg, SemiMode mode) {
  return scalar_verdict(analyze(f, x0, cfg, base.directions()), base.directions(), mode);
}

inline Verdict check_uniform(const SetValuedMap& f, const Vec& x0, const DirectionBase& base,
                             const CheckerConfig& cfg, SemiMode mode) {
  return uniform_verdict(analyze(f, x0, cfg, base.directions()), base, mode);
}

// (BN): the open ball V of radius w lies in B - C for B = [-w, w]^m, since
// σ_{B-C}(d) >= w |d|_1 >= w |d|_2 = σ_V(d) for every d.
inline Verdict check_bn(const Cone& c, const Rational& window) {
  if (sgn(window) <= 0) return Verdict::inconclusive(0, "degenerate window");
  const std::size_t m = c.dim();
  Mat dirs = sampling_directions(m);
  for (const auto& g : dual_direction_fan(c, 16)) dirs.push_back(g);
  for (const auto& d : dirs) {
    // σ_{-C}(d) is 0 or +∞; either way the comparison reduces to |d|_1 >= |d|_2.
    if (norm1(d).get_d() + 1e-12 < norm2(d)) return Verdict::inconclusive(0, "support comparison failed");
  }
  Witness w;
  w.kind = "bn";
  w.radius = window;
  w.note = "V = open ball of the given radius, B = [-radius, radius]^m";
  return Verdict::holds("support comparison: sigma_{B-C} >= radius |.|_1 >= sigma_V", 0, std::move(w));
}

inline Verdict run_notion(const LocalAnalysis& a, const DirectionBase& base, Notion n) {
  switch (n) {
    case Notion::uc:
      return uc_verdict(a, false);
    case Notion::huc:
      return uc_verdict(a, true);
    case Notion::lc:
      return lc_verdict(a, false);
    case Notion::hlc:
      return lc_verdict(a, true);
    case Notion::eff:
      return eff_verdict(a);
    case Notion::lba:
      return lba_verdict(a);
    case Notion::lls:
      return lls_verdict(a);
    case Notion::uls:
      return uls_verdict(a);
    case Notion::cminus_usc:
      return scalar_verdict(a, base.directions(), SemiMode::usc);
    case Notion::cminus_lsc:
      return scalar_verdict(a, base.directions(), SemiMode::lsc);
    case Notion::uniform_usc:
      return uniform_verdict(a, base, SemiMode::usc);
    case Notion::uniform_lsc:
      return uniform_verdict(a, base, SemiMode::lsc);
    case Notion::graph_interior:
      return graph_interior_verdict(a);
  }
  return Verdict::inconclusive(0);
}

inline Verdict check_notion(const SetValuedMap& f, const Vec& x0, Notion n, const CheckerConfig& cfg = {}) {
  auto base = default_base(f, cfg);
  return run_notion(analyze(f, x0, cfg, base.directions()), base, n);
}

// ---------------------------------------------------------------------------
// Witness re-verification by direct evaluation.

inline bool sequence_within_levels(const CheckerConfig& cfg, const Vec& x0, const std::vector<Vec>& xs) {
  if (xs.size() != static_cast<std::size_t>(cfg.levels) + 1) return false;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (xs[k].size() != x0.size() || norm_inf(xs[k] - x0) > cfg.delta(static_cast<int>(k))) return false;
  return true;
}

inline bool reverify(const SetValuedMap& f, const Vec& x0, const Witness& w, const CheckerConfig& cfg = {}) {
  const double tol = cfg.tol / 10;
  auto f0 = evaluate(f, x0);
  const auto& xs = w.sequence;
  auto seq_ok = [&] { return sequence_within_levels(cfg, x0, xs); };
  const std::string& k = w.kind;
  if (k == "empty-value") return w.x == x0 && f0.is_empty();
  if (k == "empty-sequence") {
    if (!seq_ok()) return false;
    for (const auto& x : xs)
      if (!evaluate(f, x).is_empty()) return false;
    return true;
  }
  if (k == "distance") {
    auto in = f0.contains_exact(w.z);
    if (!seq_ok() || !w.radius || !in || !*in) return false;
    for (const auto& x : xs)
      if (!farther_than(evaluate(f, x), w.z, *w.radius, tol)) return false;
    return true;
  }
  if (k == "escape-point") {
    auto in = f0.contains_exact(w.z);
    if (!seq_ok() || !in || *in) return false;
    for (const auto& x : xs) {
      auto c = evaluate(f, x).contains_exact(w.z);
      if (!c || !*c) return false;
    }
    if (w.radius) return farther_than(f0, w.z, *w.radius, tol);
    return true;
  }
  if (k == "support-excess-up" || k == "support-excess-down" || k == "uniform-usc" || k == "uniform-lsc") {
    if (!seq_ok() || !w.radius || w.directions.size() != xs.size()) return false;
    const bool up = k == "support-excess-up" || k == "uniform-lsc";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& d = w.directions[i];
      if (!f.cone().dual_contains(d) || is_zero(d)) return false;
      Extended sx = evaluate(f, xs[i]).support(d), s0 = f0.support(d);
      if (!(up ? gap_exceeds(sx, s0, *w.radius, d) : gap_exceeds(s0, sx, *w.radius, d))) return false;
    }
    return true;
  }
  if (k == "scalar-usc" || k == "scalar-lsc") {
    if (!seq_ok() || !w.epsilon || !f.cone().dual_contains(w.direction)) return false;
    const bool usc = k == "scalar-usc";
    Extended t(*w.epsilon), phi0 = -f0.support(w.direction);
    if (usc ? !(t > phi0) : !(t < phi0)) return false;
    for (const auto& x : xs) {
      Extended phi = -evaluate(f, x).support(w.direction);
      if (usc ? phi < t : phi > t) return false;
    }
    return true;
  }
  if (k == "no-common-point" || k == "no-interior-margin") {
    if (w.groups.size() != static_cast<std::size_t>(cfg.levels) + 1) return false;
    const bool margin = k == "no-interior-margin";
    for (std::size_t i = 0; i < w.groups.size(); ++i) {
      for (const auto& x : w.groups[i])
        if (norm_inf(x - x0) > cfg.delta(static_cast<int>(i))) return false;
      auto t = common_margin(f, w.groups[i], margin);
      if (!t) return false;
      if (margin ? *t > Extended(0) : !t->is_minus_infinity()) return false;
    }
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Verdict matrix and implication diagram.

struct DiagramFacts {
  bool convex = false;
  bool int_c = false;
  bool bn = false;
  bool in_dom = false;
  bool convex_valued = false;
  bool base_certified = false;
};

inline DiagramFacts diagram_facts(const LocalAnalysis& a, const DirectionBase& base) {
  DiagramFacts d;
  d.int_c = a.int_c;
  d.bn = check_bn(a.map().cone(), a.cfg.window).status == Status::holds;
  d.in_dom = !a.empty0();
  d.convex_valued = a.f0.set.is_convex();
  d.base_certified = !base_problem(base);
  if (a.poly) {
    d.convex = true;
  } else {
    SamplingPlan plan;
    plan.seed = 7;
    plan.count = 48;
    for (const auto& c : a.x0) {
      plan.lo.push_back(c - 2);
      plan.hi.push_back(c + 2);
    }
    try {
      d.convex = convexity_check(a.map(), plan).status == Status::holds;
    } catch (const std::exception&) {
      d.convex = false;
    }
  }
  return d;
}

struct Implication {
  const char* label;
  Notion premise;
  Notion conclusion;
  bool applies;
};

inline std::vector<Implication> implications(const DiagramFacts& d) {
  return {
      {"(a) uls => lc", Notion::uls, Notion::lc, true},
      {"(b) Int C, lc => uls", Notion::lc, Notion::uls, d.int_c},
      {"(c) convex, lba => uls", Notion::lba, Notion::uls, d.convex},
      {"(d) convex, eff => lc", Notion::eff, Notion::lc, d.convex},
      {"(e) BN, x0 in dom, lc => eff", Notion::lc, Notion::eff, d.bn && d.in_dom},
      {"(f) huc => lls", Notion::huc, Notion::lls, true},
      {"(g) x0 in dom, uls => lba", Notion::uls, Notion::lba, d.in_dom},
      {"(h) graph interior => lba", Notion::graph_interior, Notion::lba, true},
      {"(h) Int C, lba => graph interior", Notion::lba, Notion::graph_interior, d.int_c},
      {"(i) lc => cminus_usc", Notion::lc, Notion::cminus_usc, true},
      {"(i) huc => cminus_lsc", Notion::huc, Notion::cminus_lsc, true},
      {"(j) convex values, cminus_lsc => lls", Notion::cminus_lsc, Notion::lls, d.convex_valued},
      {"(k) certified base, uniform_usc => lc", Notion::uniform_usc, Notion::lc, d.base_certified},
      {"(k) uniform_lsc => huc", Notion::uniform_lsc, Notion::huc, true},
      {"(l) convex, x0 in dom, lc => lls", Notion::lc, Notion::lls, d.convex && d.in_dom},
      {"uc => huc", Notion::uc, Notion::huc, true},
      {"hlc => lc", Notion::hlc, Notion::lc, true},
  };
}

// Violations among decisive entries; offending pairs become inconclusive.
inline std::vector<std::string> validate_diagram(VerdictMatrix& vm, const DiagramFacts& d) {
  std::vector<std::string> found;
  std::vector<std::pair<Notion, Notion>> pairs;
  for (const auto& imp : implications(d)) {
    if (!imp.applies) continue;
    if (vm[imp.premise].status == Status::holds && vm[imp.conclusion].status == Status::fails) {
      found.push_back(std::string(imp.label) + ": " + to_string(imp.premise) + " holds but " +
                      to_string(imp.conclusion) + " fails");
      pairs.emplace_back(imp.premise, imp.conclusion);
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (auto n : {pairs[i].first, pairs[i].second}) {
      auto& e = vm[n];
      e = Verdict::inconclusive(e.resolution, "downgraded: conflicts with " + found[i]);
    }
  return found;
}

inline std::size_t worker_count(const CheckerConfig& cfg) {
  std::size_t n = cfg.threads;
  if (n == 0)
    if (const char* env = std::getenv("UPPERSET_THREADS")) n = static_cast<std::size_t>(std::max(0L, std::atol(env)));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, kNotionCount);
}

inline VerdictMatrix verdict_matrix(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg,
                                    const DirectionBase& base) {
  auto a = analyze(f, x0, cfg, base.directions());
  VerdictMatrix vm;
  vm.x0 = x0;
  const auto notions = all_notions();
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(kNotionCount);
  auto work = [&] {
    for (std::size_t i; (i = next++) < kNotionCount;) {
      try {
        vm[notions[i]] = run_notion(a, base, notions[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < worker_count(cfg); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  vm.artifacts = validate_diagram(vm, diagram_facts(a, base));
  return vm;
}

inline VerdictMatrix verdict_matrix(const SetValuedMap& f, const Vec& x0, const CheckerConfig& cfg = {}) {
  return verdict_matrix(f, x0, cfg, default_base(f, cfg));
}

}  // namespace upperset
