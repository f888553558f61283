#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "upperset/rational.hpp"

namespace upperset {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational lead = a[row][c];
    for (auto& v : a[row]) v /= lead;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Mat a, std::size_t cols) { return rref(a, cols).size(); }

// Basis of {v : row·v = 0 for every row}.
inline Mat null_space(Mat a, std::size_t cols) {
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of a square nonsingular system, or nullopt.
inline std::optional<Vec> solve_square(Mat a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a, n);
  if (pivots.size() != n) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

inline Mat transpose(const Mat& a, std::size_t cols) {
  Mat t(cols, zeros(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
  Vec r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(dot(row, x));
  return r;
}

}  // namespace upperset
