#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <limits>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace upperset {

using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "3", "-7/4", "0.125", "1e-9".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto epos = s.find_first_of("eE");
  long exponent = 0;
  if (epos != std::string::npos) {
    exponent = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  Rational value;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
    std::size_t frac = s.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + std::string(text));
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    value = Rational(num, den);
  } else {
    if (value.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + std::string(text));
  }
  value.canonicalize();
  if (exponent != 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent > 0)
      value *= Rational(p);
    else
      value /= Rational(p);
  }
  return value;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec unit_vector(std::size_t n, std::size_t i, const Rational& value = 1) {
  Vec v = zeros(n);
  v[i] = value;
  return v;
}

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

inline Rational dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "vector sum");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "vector difference");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Rational& t, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline Rational norm1(const Vec& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

inline Rational norm_inf(const Vec& v) {
  Rational s = 0;
  for (const auto& x : v)
    if (abs(x) > s) s = abs(x);
  return s;
}

inline double norm2(const Vec& v) {
  double s = 0;
  for (const auto& x : v) s += x.get_d() * x.get_d();
  return std::sqrt(s);
}

inline std::vector<double> to_double(const Vec& v) {
  std::vector<double> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.get_d());
  return r;
}

inline Vec from_double(const std::vector<double>& v) {
  Vec r;
  r.reserve(v.size());
  for (double x : v) r.emplace_back(x);
  return r;
}

// Scales a nonzero vector so its first nonzero entry has absolute value one.
inline Vec normalize_direction(Vec v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) {
      Rational s = abs(x);
      for (auto& y : v) y /= s;
      return v;
    }
  }
  return v;
}

// Element of Q ∪ {−∞, +∞}.
class Extended {
 public:
  enum class Kind { minus_infinity, finite, plus_infinity };

  Extended() : kind_(Kind::finite), value_(0) {}
  Extended(Rational v) : kind_(Kind::finite), value_(std::move(v)) {}  // NOLINT
  Extended(int v) : kind_(Kind::finite), value_(v) {}                  // NOLINT

  static Extended plus_infinity() { return Extended(Kind::plus_infinity); }
  static Extended minus_infinity() { return Extended(Kind::minus_infinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_plus_infinity() const { return kind_ == Kind::plus_infinity; }
  bool is_minus_infinity() const { return kind_ == Kind::minus_infinity; }

  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("value() of an infinite extended rational");
    return value_;
  }

  double to_double() const {
    if (is_plus_infinity()) return std::numeric_limits<double>::infinity();
    if (is_minus_infinity()) return -std::numeric_limits<double>::infinity();
    return value_.get_d();
  }

  Extended operator-() const {
    if (is_plus_infinity()) return minus_infinity();
    if (is_minus_infinity()) return plus_infinity();
    return Extended(-value_);
  }

  // Inf-addition convention is not needed anywhere; mixing opposite infinities throws.
  friend Extended operator+(const Extended& a, const Extended& b) {
    if ((a.is_plus_infinity() && b.is_minus_infinity()) ||
        (a.is_minus_infinity() && b.is_plus_infinity()))
      throw std::domain_error("+inf + -inf is undefined");
    if (a.is_plus_infinity() || b.is_plus_infinity()) return plus_infinity();
    if (a.is_minus_infinity() || b.is_minus_infinity()) return minus_infinity();
    return Extended(a.value_ + b.value_);
  }
  friend Extended operator-(const Extended& a, const Extended& b) { return a + (-b); }

  // Multiplication by a nonnegative rational; 0·(±inf) is taken as 0.
  friend Extended scale(const Rational& t, const Extended& a) {
    if (sgn(t) < 0) throw std::domain_error("negative scale on extended rational");
    if (sgn(t) == 0) return Extended(0);
    if (!a.is_finite()) return a;
    return Extended(t * a.value_);
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    auto rank = [](Kind k) { return k == Kind::minus_infinity ? 0 : (k == Kind::finite ? 1 : 2); };
    if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
    if (!a.is_finite()) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const {
    if (is_plus_infinity()) return "+inf";
    if (is_minus_infinity()) return "-inf";
    return value_.get_str();
  }

 private:
  explicit Extended(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rational value_;
};

inline std::string to_string(const Extended& e) {
  if (e.is_plus_infinity()) return "inf";
  if (e.is_minus_infinity()) return "-inf";
  return e.value().get_str();
}

}  // namespace upperset
