#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "nikhp/errors.hpp"
#include "nikhp/scalar.hpp"

namespace nikhp {

/// Minimal dense row-major matrix; only what the solvers need.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

/// Exact nullspace basis via Gaussian elimination with partial pivoting.
template <class S>
std::vector<std::vector<S>> exact_nullspace(Matrix<S> a) {
  static_assert(is_exact_v<S>);
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t best = row;
    for (std::size_t i = row; i < r; ++i)
      if (abs(a(i, col)) > abs(a(best, col))) best = i;
    if (a(best, col) == 0) continue;
    if (best != row)
      for (std::size_t j = 0; j < c; ++j) std::swap(a(row, j), a(best, j));
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a(i, col) == 0) continue;
      S f = a(i, col) / a(row, col);
      for (std::size_t j = col; j < c; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(c, false);
  for (std::size_t p : pivot_col) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t f = 0; f < c; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> x(c, S(0));
    x[f] = S(1);
    for (std::size_t k = pivot_col.size(); k-- > 0;) {
      std::size_t p = pivot_col[k];
      x[p] = -a(k, f) / a(k, p);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace detail {

template <class F>
int exponent_of(const F& x) {
  if (x == 0) return 0;
  return int(mpfr_get_exp(x.backend().data()));
}

/// Power-of-two scale factor bringing x near 1; exact in binary arithmetic.
template <class F>
F pow2_scale(int e) {
  return ldexp(F(1), -e);
}

}  // namespace detail

/// Nullspace basis of a float matrix via Householder QR with column pivoting.
/// Rows and columns are equilibrated by exact powers of two first. The rank
/// threshold is relative: diagonal entries below eps_rel * |R_00| count as
/// zero.
template <class F>
std::vector<std::vector<F>> float_nullspace(Matrix<F> a, const F& eps_rel) {
  static_assert(!is_exact_v<F>);
  const std::size_t r = a.rows(), c = a.cols();
  // Row equilibration (does not change the nullspace).
  for (std::size_t i = 0; i < r; ++i) {
    F m(0);
    for (std::size_t j = 0; j < c; ++j) m = std::max(m, abs(a(i, j)));
    if (m == 0) continue;
    F s = detail::pow2_scale<F>(detail::exponent_of(m));
    for (std::size_t j = 0; j < c; ++j) a(i, j) *= s;
  }
  // Column equilibration (rescales solution components; undone at the end).
  std::vector<F> col_scale(c, F(1));
  for (std::size_t j = 0; j < c; ++j) {
    F m(0);
    for (std::size_t i = 0; i < r; ++i) m = std::max(m, abs(a(i, j)));
    if (m == 0) continue;
    F s = detail::pow2_scale<F>(detail::exponent_of(m));
    col_scale[j] = s;
    for (std::size_t i = 0; i < r; ++i) a(i, j) *= s;
  }

  const Matrix<F> scaled = a;  // kept for residuals in the refinement passes

  std::vector<std::size_t> perm(c);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<F> colnorm(c, F(0));
  auto recompute_norm = [&](std::size_t j, std::size_t from) {
    F s(0);
    for (std::size_t i = from; i < r; ++i) s += a(i, j) * a(i, j);
    colnorm[j] = s;
  };
  for (std::size_t j = 0; j < c; ++j) recompute_norm(j, 0);

  const std::size_t steps = std::min(r, c);
  std::vector<std::vector<F>> house;  // Householder vectors, for Q^T applies
  std::vector<F> house_vtv;
  std::size_t k = 0;
  for (; k < steps; ++k) {
    std::size_t best = k;
    for (std::size_t j = k + 1; j < c; ++j)
      if (colnorm[j] > colnorm[best]) best = j;
    if (best != k) {
      for (std::size_t i = 0; i < r; ++i) std::swap(a(i, k), a(i, best));
      std::swap(colnorm[k], colnorm[best]);
      std::swap(perm[k], perm[best]);
    }
    F norm(0);
    for (std::size_t i = k; i < r; ++i) norm += a(i, k) * a(i, k);
    norm = sqrt(norm);
    if (norm == 0) break;
    F alpha = a(k, k) >= 0 ? -norm : norm;
    std::vector<F> v(r, F(0));
    v[k] = a(k, k) - alpha;
    for (std::size_t i = k + 1; i < r; ++i) v[i] = a(i, k);
    F vtv(0);
    for (std::size_t i = k; i < r; ++i) vtv += v[i] * v[i];
    a(k, k) = alpha;
    for (std::size_t i = k + 1; i < r; ++i) a(i, k) = F(0);
    if (vtv != 0) {
      for (std::size_t j = k + 1; j < c; ++j) {
        F dot(0);
        for (std::size_t i = k; i < r; ++i) dot += v[i] * a(i, j);
        F f = 2 * dot / vtv;
        for (std::size_t i = k; i < r; ++i) a(i, j) -= f * v[i];
      }
    }
    house.push_back(std::move(v));
    house_vtv.push_back(vtv);
    for (std::size_t j = k + 1; j < c; ++j) recompute_norm(j, k + 1);
  }

  F r00 = abs(a(0, 0));
  std::size_t rank = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (abs(a(i, i)) > eps_rel * r00) ++rank;

  // Solve R[0..rank) y = rhs[0..rank) in the permuted coordinates, with the
  // free components of y supplied by the caller.
  auto back_solve = [&](std::vector<F>& y, const std::vector<F>& rhs) {
    for (std::size_t i = rank; i-- > 0;) {
      F s = rhs[i];
      for (std::size_t j = i + 1; j < c; ++j) s -= a(i, j) * y[j];
      y[i] = s / a(i, i);
    }
  };
  auto apply_qt = [&](std::vector<F> w) {
    for (std::size_t t = 0; t < house.size(); ++t) {
      if (house_vtv[t] == 0) continue;
      F dot(0);
      for (std::size_t i = t; i < r; ++i) dot += house[t][i] * w[i];
      F f = 2 * dot / house_vtv[t];
      for (std::size_t i = t; i < r; ++i) w[i] -= f * house[t][i];
    }
    return w;
  };

  std::vector<std::vector<F>> basis;
  for (std::size_t f = rank; f < c; ++f) {
    std::vector<F> y(c, F(0));
    y[f] = F(1);
    back_solve(y, std::vector<F>(rank, F(0)));
    // Fixed-precision refinement against the scaled matrix: the residual is
    // computed fresh, so the factorization error washes out of the solution.
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<F> res(r, F(0));
      for (std::size_t i = 0; i < r; ++i) {
        F s(0);
        for (std::size_t j = 0; j < c; ++j) s += scaled(i, perm[j]) * y[j];
        res[i] = s;
      }
      auto qtr = apply_qt(std::move(res));
      std::vector<F> delta(c, F(0));
      back_solve(delta, qtr);
      for (std::size_t j = 0; j < rank; ++j) y[j] -= delta[j];
    }
    std::vector<F> x(c, F(0));
    for (std::size_t j = 0; j < c; ++j) x[perm[j]] = y[j] * col_scale[perm[j]];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace nikhp
