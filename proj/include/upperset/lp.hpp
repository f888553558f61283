#pragma once

// Dense two-phase primal simplex with Bland's rule over an ordered field
// (the rationals, or germs of rational functions in germ.hpp). Variables are
// free; constraints carry their own sense. Sizes here are tiny (a handful of
// variables and a few dozen rows), so the tableau is dense.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upperset/rational.hpp"

namespace upperset {

enum class Sense { less_equal, greater_equal, equal };

template <class T>
struct BasicLinearConstraint {
  std::vector<T> coeffs;
  Sense sense = Sense::greater_equal;
  T rhs;
};

template <class T>
struct BasicLinearProgram {
  std::size_t num_vars = 0;
  std::vector<T> objective;  // maximized
  std::vector<BasicLinearConstraint<T>> rows;

  void add(std::vector<T> coeffs, Sense sense, T rhs) {
    if (coeffs.size() != num_vars) throw std::invalid_argument("LP row has wrong width");
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { optimal, unbounded, infeasible };

template <class T>
struct BasicLpResult {
  LpStatus status = LpStatus::infeasible;
  T value;
  std::vector<T> point;
  // Multipliers y with A^T y = c and b·y = value; y_i >= 0 on <= rows,
  // y_i <= 0 on >= rows, free on equality rows.
  std::vector<T> duals;

  bool optimal() const { return status == LpStatus::optimal; }
};

using LinearConstraint = BasicLinearConstraint<Rational>;
using LinearProgram = BasicLinearProgram<Rational>;
using LpResult = BasicLpResult<Rational>;

namespace detail {

template <class T>
class Tableau {
  using V = std::vector<T>;
  static V zero_vec(std::size_t n) { return V(n, T(0)); }

 public:
  Tableau(const BasicLinearProgram<T>& lp) : n_(lp.num_vars), m_(lp.rows.size()) {
    std::size_t slacks = 0;
    for (const auto& r : lp.rows)
      if (r.sense != Sense::equal) ++slacks;
    struct_cols_ = 2 * n_;
    first_slack_ = struct_cols_;
    first_art_ = first_slack_ + slacks;
    cols_ = first_art_ + m_;
    t_.assign(m_, zero_vec(cols_ + 1));
    row_sign_.assign(m_, 1);
    basis_.assign(m_, 0);
    std::size_t s = first_slack_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& r = lp.rows[i];
      if (r.coeffs.size() != n_) throw std::invalid_argument("LP row has wrong width");
      for (std::size_t j = 0; j < n_; ++j) {
        t_[i][j] = r.coeffs[j];
        t_[i][n_ + j] = -r.coeffs[j];
      }
      if (r.sense == Sense::less_equal) t_[i][s++] = 1;
      if (r.sense == Sense::greater_equal) t_[i][s++] = -1;
      t_[i][cols_] = r.rhs;
      if (sgn(r.rhs) < 0) {
        row_sign_[i] = -1;
        for (auto& v : t_[i]) v = -v;
      }
      t_[i][first_art_ + i] = 1;
      basis_[i] = first_art_ + i;
    }
  }

  BasicLpResult<T> solve(const V& objective) {
    // Phase I: maximize -(sum of artificials).
    V phase1 = zero_vec(cols_);
    for (std::size_t i = 0; i < m_; ++i) phase1[first_art_ + i] = -1;
    run(phase1, /*allow_artificial=*/true);
    T infeasibility(0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= first_art_) infeasibility += t_[i][cols_];
    BasicLpResult<T> result;
    if (sgn(infeasibility) != 0) {
      result.status = LpStatus::infeasible;
      return result;
    }
    drive_out_artificials();

    V cost = zero_vec(cols_);
    for (std::size_t j = 0; j < n_; ++j) {
      cost[j] = objective[j];
      cost[n_ + j] = -objective[j];
    }
    if (!run(cost, /*allow_artificial=*/false)) {
      result.status = LpStatus::unbounded;
      return result;
    }
    result.status = LpStatus::optimal;
    result.point = zero_vec(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t b = basis_[i];
      if (b < n_) result.point[b] += t_[i][cols_];
      else if (b < 2 * n_) result.point[b - n_] -= t_[i][cols_];
    }
    result.value = T(0);
    for (std::size_t j = 0; j < n_; ++j) result.value += objective[j] * result.point[j];
    // y = c_B B^{-1}; the artificial columns hold B^{-1} of the sign-normalized system.
    result.duals = zero_vec(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      T y(0);
      for (std::size_t i = 0; i < m_; ++i) y += cost[basis_[i]] * t_[i][first_art_ + k];
      result.duals[k] = row_sign_[k] < 0 ? -y : y;
    }
    return result;
  }

 private:
  // Returns false when the objective is unbounded.
  bool run(const V& cost, bool allow_artificial) {
    const std::size_t limit = allow_artificial ? cols_ : first_art_;
    for (;;) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (in_basis(j)) continue;
        T reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) reduced -= cost[basis_[i]] * t_[i][j];
        if (sgn(reduced) > 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return true;
      std::size_t leave = m_;
      T best_ratio(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][entering]) <= 0) continue;
        T ratio = t_[i][cols_] / t_[i][entering];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (!in_basis(j) && sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  bool in_basis(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    T p = t_[row][col];
    for (auto& v : t_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || sgn(t_[i][col]) == 0) continue;
      T factor = t_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= factor * t_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t n_, m_;
  std::size_t struct_cols_ = 0, first_slack_ = 0, first_art_ = 0, cols_ = 0;
  std::vector<V> t_;
  std::vector<int> row_sign_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

template <class T>
BasicLpResult<T> lp_solve(const BasicLinearProgram<T>& lp) {
  if (lp.objective.size() != lp.num_vars) throw std::invalid_argument("LP objective has wrong width");
  if (lp.rows.empty()) {
    BasicLpResult<T> r;
    bool zero_objective = true;
    for (const auto& c : lp.objective)
      if (sgn(c) != 0) zero_objective = false;
    if (zero_objective) {
      r.status = LpStatus::optimal;
      r.value = T(0);
      r.point.assign(lp.num_vars, T(0));
    } else {
      r.status = LpStatus::unbounded;
    }
    return r;
  }
  detail::Tableau<T> tableau(lp);
  return tableau.solve(lp.objective);
}

template <class T>
bool lp_feasible(const BasicLinearProgram<T>& lp) {
  BasicLinearProgram<T> copy = lp;
  copy.objective.assign(lp.num_vars, T(0));
  return lp_solve(copy).optimal();
}

}  // namespace upperset
