#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "upperset/corpus.hpp"
#include "upperset/duality.hpp"

namespace upperset {

using json = nlohmann::json;

// Rationals travel as strings ("3", "-7/4", "0.125"); plain JSON numbers are accepted on input.

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.get_str(); }

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array, got " + j.dump());
  Vec v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

inline Mat mat_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of arrays, got " + j.dump());
  Mat m;
  for (const auto& r : j) m.push_back(vec_from_json(r));
  return m;
}

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const Mat& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(to_json(r));
  return a;
}

inline json extended_to_json(const Extended& e) { return to_string(e); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

// Cone: {"dim": m, "generators": [[...], ...]}.
inline json to_json(const Cone& c) { return {{"dim", c.dim()}, {"generators", to_json(c.generators())}}; }

inline std::shared_ptr<const Cone> cone_from_json(const json& j) {
  auto dim = field(j, "dim").get<std::size_t>();
  return std::make_shared<const Cone>(Cone::from_generators(dim, mat_from_json(field(j, "generators"))));
}

// Polyhedron: [{"normal": [...], "offset": r}, ...] meaning normal·z >= offset.
inline json to_json(const Polyhedron& p) {
  json a = json::array();
  for (const auto& h : p.halfspaces()) a.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  return a;
}

inline Polyhedron polyhedron_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw std::invalid_argument("polyhedron must be an array of halfspaces");
  std::vector<Halfspace> hs;
  for (const auto& h : j) {
    auto n = vec_from_json(field(h, "normal"));
    if (n.size() != dim) throw std::invalid_argument("halfspace normal has wrong dimension");
    hs.push_back({std::move(n), rational_from_json(field(h, "offset"))});
  }
  return Polyhedron(dim, std::move(hs));
}

// Upper set: {"pieces": [polyhedron, ...]} or {"oracle": "parabola"}.
inline json to_json(const UpperSet& u) {
  if (u.is_oracle()) {
    if (u.oracle().label.empty()) throw std::invalid_argument("unlabeled support oracle cannot be serialized");
    return {{"oracle", u.oracle().label}};
  }
  json pieces = json::array();
  for (const auto& p : u.pieces()) pieces.push_back(to_json(p));
  return {{"pieces", pieces}};
}

inline UpperSet upper_set_from_json(const json& j, const std::shared_ptr<const Cone>& c) {
  if (j.contains("oracle")) {
    auto name = j.at("oracle").get<std::string>();
    if (name == "parabola") return parabola_set(c);
    throw std::invalid_argument("unknown oracle '" + name + "'");
  }
  UpperSet::Pieces pieces;
  for (const auto& p : field(j, "pieces")) pieces.push_back(polyhedron_from_json(p, c->dim()));
  return UpperSet::from_union(std::move(pieces), c);
}

inline json to_json(const Body& b) {
  if (const auto* a = std::get_if<AffineHalfspaceBody>(&b)) {
    json j{{"kind", "affine_halfspace"},
           {"normals", to_json(a->normals)},
           {"offsets", to_json(a->offsets)},
           {"coupling", to_json(a->coupling)}};
    if (a->moving_normals()) {
      json s = json::array();
      for (const auto& m : a->normal_slopes) s.push_back(to_json(m));
      j["normal_slopes"] = s;
    }
    return j;
  }
  if (const auto* s = std::get_if<ScaledBaseBody>(&b))
    return {{"kind", "scaled_base"},
            {"base", to_json(s->base)},
            {"alpha_slope", to_json(s->alpha_slope)},
            {"alpha_offset", to_json(s->alpha_offset)}};
  const auto& p = std::get<PiecewiseBody>(b);
  return {{"kind", "piecewise"},
          {"guard_normal", to_json(p.guard_normal)},
          {"guard_offset", to_json(p.guard_offset)},
          {"strict", p.strict},
          {"then", to_json(*p.then_body)},
          {"else", to_json(*p.else_body)}};
}

inline Body body_from_json(const json& j, const std::shared_ptr<const Cone>& c) {
  auto kind = field(j, "kind").get<std::string>();
  if (kind == "affine_halfspace") {
    AffineHalfspaceBody a{mat_from_json(field(j, "normals")), vec_from_json(field(j, "offsets")),
                          mat_from_json(field(j, "coupling")), {}};
    if (j.contains("normal_slopes"))
      for (const auto& m : j.at("normal_slopes")) a.normal_slopes.push_back(mat_from_json(m));
    if (a.offsets.size() != a.normals.size() || a.coupling.size() != a.normals.size())
      throw std::invalid_argument("affine body rows are inconsistent");
    return a;
  }
  if (kind == "scaled_base")
    return ScaledBaseBody{upper_set_from_json(field(j, "base"), c), vec_from_json(field(j, "alpha_slope")),
                          rational_from_json(field(j, "alpha_offset"))};
  if (kind == "piecewise")
    return guarded(vec_from_json(field(j, "guard_normal")), rational_from_json(field(j, "guard_offset")),
                   j.value("strict", false), body_from_json(field(j, "then"), c), body_from_json(field(j, "else"), c));
  throw std::invalid_argument("unknown body kind '" + kind + "'");
}

inline json to_json(const SetValuedMap& f) {
  return {{"name", f.name()}, {"n", f.domain_dim()}, {"cone", to_json(f.cone())}, {"body", to_json(f.body())}};
}

inline SetValuedMap map_from_json(const json& j) {
  auto c = cone_from_json(field(j, "cone"));
  return SetValuedMap(field(j, "n").get<std::size_t>(), c, body_from_json(field(j, "body"), c), j.value("name", ""));
}

// Fixture: the map fields plus {"id", "split": {"n","p"}, "labels": [{"at", "expect": {notion: status}}],
// "duality": {"x0", "regular"}, "notes"}.
inline json to_json(const Fixture& fx) {
  const SetValuedMap& f = fx.map ? *fx.map : fx.bivariate->f;
  json j = to_json(f);
  j["id"] = fx.id;
  j["notes"] = fx.notes;
  if (fx.bivariate) j["split"] = {{"n", fx.bivariate->n}, {"p", fx.bivariate->p}};
  json labels = json::array();
  for (const auto& pt : fx.points) {
    json e = json::object();
    for (const auto& [n, s] : pt.labels) e[to_string(n)] = to_string(s);
    labels.push_back({{"at", to_json(pt.x0)}, {"expect", e}});
  }
  j["labels"] = labels;
  if (fx.duality) j["duality"] = {{"x0", to_json(fx.duality->x0)}, {"regular", fx.duality->regular}};
  return j;
}

inline Fixture fixture_from_json(const json& j) {
  Fixture fx;
  fx.id = j.value("id", j.value("name", "fixture"));
  fx.notes = j.value("notes", "");
  auto f = map_from_json(j);
  if (j.contains("split")) {
    const auto& s = j.at("split");
    fx.bivariate = BivariateMap(std::move(f), field(s, "n").get<std::size_t>(), field(s, "p").get<std::size_t>());
  } else {
    fx.map = std::move(f);
  }
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      PointLabels pt{vec_from_json(field(l, "at")), {}};
      if (l.contains("expect"))
        for (const auto& [k, v] : l.at("expect").items())
          pt.labels.emplace_back(notion_from_string(k), status_from_string(v.get<std::string>()));
      fx.points.push_back(std::move(pt));
    }
  }
  if (j.contains("duality")) {
    const auto& d = j.at("duality");
    fx.duality = DualityExpectation{vec_from_json(field(d, "x0")), d.value("regular", true)};
  }
  return fx;
}

// Reports.

inline json to_json(const Witness& w) {
  json j{{"kind", w.kind}};
  if (!w.x.empty()) j["x"] = to_json(w.x);
  if (!w.z.empty()) j["z"] = to_json(w.z);
  if (!w.direction.empty()) j["direction"] = to_json(w.direction);
  if (w.radius) j["radius"] = to_json(*w.radius);
  if (w.epsilon) j["epsilon"] = to_json(*w.epsilon);
  if (!w.sequence.empty()) j["sequence"] = to_json(w.sequence);
  if (!w.directions.empty()) j["directions"] = to_json(w.directions);
  if (!w.groups.empty()) {
    json g = json::array();
    for (const auto& grp : w.groups) g.push_back(to_json(grp));
    j["groups"] = g;
  }
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"basis", v.basis}, {"resolution", v.resolution}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline json to_json(const VerdictMatrix& vm) {
  json verdicts = json::object();
  for (auto n : all_notions()) verdicts[to_string(n)] = to_json(vm[n]);
  return {{"x0", to_json(vm.x0)}, {"verdicts", verdicts}, {"artifacts", vm.artifacts}};
}

inline json support_table(const UpperSet& u, const DirectionBase& base) {
  json t = json::array();
  for (const auto& d : base.directions()) t.push_back({{"zstar", to_json(d)}, {"support", extended_to_json(u.support(d))}});
  return t;
}

inline json to_json(const DualityReport& r, const DirectionBase& base) {
  json dirs = json::array();
  for (const auto& l : r.family.properness_log) {
    json e{{"zstar", to_json(l.zstar)}, {"status", to_string(l.status)}};
    if (!l.note.empty()) e["note"] = l.note;
    dirs.push_back(e);
  }
  json fam = json::array();
  for (const auto& [z, y] : r.family.entries) fam.push_back({{"zstar", to_json(z)}, {"ystar", to_json(y)}});
  json j{{"applied", r.applied},
         {"regularity", to_json(r.regularity)},
         {"directions", dirs},
         {"family", fam},
         {"lhs", support_table(r.lhs, base)}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  if (r.applied) {
    j["rhs"] = support_table(r.rhs, base);
    j["gap"] = {{"value", r.gap.value}, {"exact", r.gap.exact}};
    if (r.exact_equal) j["exact_equal"] = *r.exact_equal;
  }
  return j;
}

}  // namespace upperset
