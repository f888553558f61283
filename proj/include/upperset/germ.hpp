#pragma once

// Germs at t = 0+ of rational functions p(t)/q(t) with rational coefficients.
// Ordered by the sign for all sufficiently small t > 0, which makes them an
// ordered field; running the simplex over it yields the eventual behavior of a
// parametric LP as the parameter tends to 0 from above.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "upperset/rational.hpp"

namespace upperset {

// Coefficients from degree 0 upward; no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Rational>;

namespace poly {

inline void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly neg(Poly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Quotient and remainder of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly monic(Poly p) {
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline std::size_t valuation(const Poly& p) {
  std::size_t i = 0;
  while (i < p.size() && sgn(p[i]) == 0) ++i;
  return i;
}

}  // namespace poly

class Germ {
 public:
  Germ() = default;
  Germ(long v) : num_(v == 0 ? Poly{} : Poly{Rational(v)}), den_{Rational(1)} {}
  Germ(const Rational& v) : num_(sgn(v) == 0 ? Poly{} : Poly{v}), den_{Rational(1)} {}
  Germ(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    poly::trim(num_);
    poly::trim(den_);
    if (den_.empty()) throw std::domain_error("germ with zero denominator");
    normalize();
  }

  // a + b t
  static Germ linear(const Rational& a, const Rational& b) { return Germ(Poly{a, b}, Poly{Rational(1)}); }
  static Germ t() { return linear(0, 1); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  // Sign for all small t > 0.
  int sign() const {
    if (num_.empty()) return 0;
    int a = sgn(num_[poly::valuation(num_)]);
    int b = sgn(den_[poly::valuation(den_)]);
    return a * b;
  }

  // Limit as t -> 0+: finite value, or +/-infinity.
  Extended limit() const {
    if (num_.empty()) return Extended(0);
    std::size_t vn = poly::valuation(num_), vd = poly::valuation(den_);
    if (vn > vd) return Extended(0);
    if (vn == vd) return Extended(Rational(num_[vn] / den_[vd]));
    return sign() > 0 ? Extended::plus_infinity() : Extended::minus_infinity();
  }

  Rational at(const Rational& t) const {
    auto eval = [&](const Poly& p) {
      Rational v = 0;
      for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
      return v;
    };
    return eval(num_) / eval(den_);
  }

  friend Germ operator+(const Germ& a, const Germ& b) {
    return Germ(poly::add(poly::mul(a.num_, b.den_), poly::mul(b.num_, a.den_)), poly::mul(a.den_, b.den_));
  }
  friend Germ operator-(const Germ& a, const Germ& b) { return a + (-b); }
  friend Germ operator*(const Germ& a, const Germ& b) {
    return Germ(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_));
  }
  friend Germ operator/(const Germ& a, const Germ& b) {
    if (b.num_.empty()) throw std::domain_error("germ division by zero");
    return Germ(poly::mul(a.num_, b.den_), poly::mul(a.den_, b.num_));
  }
  Germ operator-() const {
    Germ r = *this;
    r.num_ = poly::neg(r.num_);
    return r;
  }
  Germ& operator+=(const Germ& o) { return *this = *this + o; }
  Germ& operator-=(const Germ& o) { return *this = *this - o; }
  Germ& operator*=(const Germ& o) { return *this = *this * o; }
  Germ& operator/=(const Germ& o) { return *this = *this / o; }

  friend bool operator==(const Germ& a, const Germ& b) { return (a - b).sign() == 0; }
  friend bool operator<(const Germ& a, const Germ& b) { return (b - a).sign() > 0; }
  friend bool operator>(const Germ& a, const Germ& b) { return b < a; }
  friend bool operator<=(const Germ& a, const Germ& b) { return !(b < a); }
  friend bool operator>=(const Germ& a, const Germ& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Germ& g) {
    auto put = [&](const Poly& p) {
      os << "(";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " + " : "") << p[i].get_str() << "t^" << i;
      if (p.empty()) os << "0";
      os << ")";
    };
    put(g.num_);
    os << "/";
    put(g.den_);
    return os;
  }

 private:
  void normalize() {
    if (num_.empty()) {
      den_ = {Rational(1)};
      return;
    }
    Poly g = poly::gcd(num_, den_);
    if (g.size() > 1) {
      num_ = poly::divmod(num_, g).first;
      den_ = poly::divmod(den_, g).first;
    }
    Rational lead = den_.back();
    for (auto& c : num_) c /= lead;
    for (auto& c : den_) c /= lead;
  }

  Poly num_;
  Poly den_{Rational(1)};
};

inline int sgn(const Germ& g) { return g.sign(); }

}  // namespace upperset
