#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "upperset/linalg.hpp"
#include "upperset/polyhedron.hpp"
#include "upperset/rational.hpp"

namespace upperset {

// Polyhedral closed convex cone C ⊆ R^m carried in both representations.
// Construction rejects C = R^m (the negative dual would be {0}).
class Cone {
 public:
  static Cone from_generators(std::size_t dim, Mat generators) {
    Cone c(dim);
    for (auto& g : generators) {
      if (g.size() != dim) throw std::invalid_argument("cone generator has wrong dimension");
      if (is_zero(g)) throw std::invalid_argument("cone generator must be nonzero");
    }
    // Halfspaces of C are generators of its dual {y : y·g >= 0}.
    auto dual = enumerate_cone(generators, {}, dim);
    c.normals_ = dual.rays;
    for (const auto& l : dual.lines) {
      c.normals_.push_back(l);
      c.normals_.push_back(-l);
    }
    auto self = enumerate_cone(c.normals_, {}, dim);
    c.generators_ = self.rays;
    for (const auto& l : self.lines) {
      c.generators_.push_back(l);
      c.generators_.push_back(-l);
    }
    c.finish();
    return c;
  }

  static Cone from_halfspaces(std::size_t dim, Mat normals) {
    for (auto& n : normals)
      if (n.size() != dim) throw std::invalid_argument("cone normal has wrong dimension");
    auto gens = enumerate_cone(normals, {}, dim);
    Mat g = gens.rays;
    for (const auto& l : gens.lines) {
      g.push_back(l);
      g.push_back(-l);
    }
    if (g.empty()) {
      Cone c(dim);
      c.normals_ = normals;
      c.finish();
      return c;
    }
    return from_generators(dim, std::move(g));
  }

  static Cone nonnegative_orthant(std::size_t dim) {
    Mat g;
    for (std::size_t i = 0; i < dim; ++i) g.push_back(unit_vector(dim, i));
    return from_generators(dim, std::move(g));
  }

  std::size_t dim() const { return dim_; }
  const Mat& generators() const { return generators_; }
  // n with C = {z : n·z >= 0 for all listed n}.
  const Mat& normals() const { return normals_; }
  bool pointed() const { return pointed_; }
  bool has_interior() const { return has_interior_; }

  bool contains(const Vec& z) const {
    if (z.size() != dim_) throw std::invalid_argument("dimension mismatch in cone_contains");
    for (const auto& n : normals_)
      if (sgn(dot(n, z)) < 0) return false;
    return true;
  }

  Polyhedron as_polyhedron() const {
    std::vector<Halfspace> hs;
    for (const auto& n : normals_) hs.push_back({n, 0});
    return Polyhedron(dim_, std::move(hs));
  }

  // Point k with k + small ball ⊆ C, when Int C is nonempty.
  Vec interior_point() const {
    Vec k = zeros(dim_);
    for (const auto& g : generators_) k = k + g;
    return k;
  }

  // Whether the cone C^- = {z* : z*·z <= 0 on C} contains zstar.
  bool dual_contains(const Vec& zstar) const {
    for (const auto& g : generators_)
      if (sgn(dot(zstar, g)) > 0) return false;
    return true;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    if (a.dim_ != b.dim_) return false;
    for (const auto& g : a.generators_)
      if (!b.contains(g)) return false;
    for (const auto& g : b.generators_)
      if (!a.contains(g)) return false;
    return true;
  }

 private:
  explicit Cone(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("cone dimension must be positive");
  }

  void finish() {
    has_interior_ = !generators_.empty() && rank(generators_, dim_) == dim_;
    pointed_ = normals_.empty() ? false : rank(normals_, dim_) == dim_;
    if (generators_.empty()) pointed_ = true;
    bool dual_trivial = true;
    for (const auto& n : normals_)
      if (!is_zero(n)) dual_trivial = false;
    if (dual_trivial) throw std::invalid_argument("ordering cone must differ from the whole space");
  }

  std::size_t dim_;
  Mat generators_;
  Mat normals_;
  bool pointed_ = true;
  bool has_interior_ = false;
};

inline bool cone_contains(const Cone& c, const Vec& z) { return c.contains(z); }

// C^- = {z* : z*·z <= 0 for all z in C}.
inline Cone dual_cone(const Cone& c) {
  Mat gens;
  for (const auto& n : c.normals()) gens.push_back(-n);
  return Cone::from_generators(c.dim(), std::move(gens));
}

}  // namespace upperset
