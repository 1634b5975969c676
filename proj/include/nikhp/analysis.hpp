#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nikhp/hermite_pade.hpp"

namespace nikhp {

/// ML solve on the reversed system: the companion vector (b_{k,0..m}).
template <class S>
HermitePadeSolution<S> reversed_solution(const NikishinSystem<S>& sys, int k,
                                         SolveOptions opts = {}) {
  return solve(sys.reversed(), k, Formulation::ml, opts);
}

namespace detail {

template <class S, class Fn>
auto integrate_measure(const Measure<S>& mu, Fn&& f) {
  using R = decltype(f(std::declval<const S&>()));
  switch (mu.kind()) {
    case MeasureKind::discrete: {
      R acc{};
      for (const auto& a : mu.atoms()) acc = acc + a.w * f(a.x);
      return acc;
    }
    case MeasureKind::continuous: {
      if constexpr (is_exact_v<S>) {
        fail(errc::backend_unsupported, "continuous integration needs a float backend");
      } else {
        const auto& c = mu.continuous_data();
        return integrate([&](const S& x) { return mu.density(x) * f(x); }, c.interval.lo,
                         c.interval.hi);
      }
    }
    case MeasureKind::resolvent:
      fail(errc::backend_unsupported,
           "pointwise integration against a resolvent-form measure (atoms are algebraic)");
  }
  fail(errc::invalid_argument, "unreachable");
}

}  // namespace detail

/// Cauchy convolution kernel: K(x1, xm) = 1/(x1 - xm) for m = 2, and the
/// iterated integral over the middle generators otherwise. Exact nested sums
/// for discrete middles.
template <class S>
S cauchy_convolution_kernel(const NikishinSystem<S>& sys, const S& x1, const S& xm) {
  const std::size_t m = sys.size();
  require(m >= 2, errc::invalid_argument, "the kernel needs at least two measures");
  // G(i, t) integrates the tail of the chain: G(m, t) = 1/(t - xm).
  std::function<S(std::size_t, const S&)> level = [&](std::size_t i, const S& t) -> S {
    if (i == m) {
      require(t != xm, errc::division_by_zero, "kernel denominator vanishes");
      return S(1) / (t - xm);
    }
    return detail::integrate_measure(sys.generator(i), [&](const S& x) {
      require(t != x, errc::division_by_zero, "kernel denominator vanishes");
      return level(i + 1, x) / (t - x);
    });
  };
  return level(2, x1);
}

template <class S>
struct BiorthogonalityMatrix {
  int order = 0;       // N: rows n = 1..N, columns k = 1..N
  Matrix<S> entries;   // entries(n-1, k-1) = <<b_k, a_n>> under the kernel

  S max_off_diagonal() const {
    S worst(0);
    for (std::size_t i = 0; i < entries.rows(); ++i)
      for (std::size_t j = 0; j < entries.cols(); ++j)
        if (i != j) worst = std::max(worst, abs(entries(i, j)));
    return worst;
  }
  S min_diagonal() const {
    S best = abs(entries(0, 0));
    for (std::size_t i = 0; i < entries.rows(); ++i) best = std::min(best, abs(entries(i, i)));
    return best;
  }
};

/// Double integrals of b_{k,m} K a_{n,m} against sigma_m and sigma_1: the
/// direct and reversed denominator sequences are biorthogonal under the
/// convolution kernel. Exact for discrete systems.
template <class S>
BiorthogonalityMatrix<S> biorthogonality_matrix(const NikishinSystem<S>& sys, int order,
                                                SolveOptions opts = {}) {
  const std::size_t m = sys.size();
  require(m >= 2, errc::invalid_argument, "biorthogonality needs at least two measures");
  require(order >= 1, errc::invalid_argument, "order must be at least 1");
  BiorthogonalityMatrix<S> out;
  out.order = order;
  out.entries = Matrix<S>(std::size_t(order), std::size_t(order));

  auto reversed = sys.reversed();
  std::vector<HermitePadeSolution<S>> direct, rev;
  for (int n = 1; n <= order; ++n) {
    direct.push_back(solve(sys, n, Formulation::ml, opts));
    rev.push_back(solve(reversed, n, Formulation::ml, opts));
  }

  const auto& sigma_1 = sys.generator(1);
  const auto& sigma_m = sys.generator(m);
  // Kernel values cache over the (x1, xm) atom grid when both ends are
  // explicit; the generic path recomputes inside the integrals.
  for (int n = 1; n <= order; ++n)
    for (int k = 1; k <= order; ++k) {
      const auto& a = direct[std::size_t(n - 1)].a(m);
      const auto& b = rev[std::size_t(k - 1)].a(m);
      S value = detail::integrate_measure(sigma_1, [&](const S& x1) {
        return b(x1) * detail::integrate_measure(sigma_m, [&](const S& xm) {
                 return cauchy_convolution_kernel(sys, x1, xm) * a(xm);
               });
      });
      out.entries(std::size_t(n - 1), std::size_t(k - 1)) = value;
    }
  return out;
}

/// The inner kernel integral of the biorthogonality proof:
/// A_{n,1}(x1) = int a_{n,m}(xm) K(x1, xm) d sigma_m(xm). Used as an
/// independent consistency oracle for the kernel.
template <class S>
S kernel_form_value(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys,
                    const S& x1) {
  const std::size_t m = sol.m();
  require(m >= 2, errc::invalid_argument, "the kernel needs at least two measures");
  return detail::integrate_measure(sys.generator(m), [&](const S& xm) {
    return cauchy_convolution_kernel(sys, x1, xm) * sol.a(m)(xm);
  });
}

template <class S>
struct EvaluationGrid {
  std::vector<Complex<S>> points;
  S margin{};
  std::size_t nx = 0, ny = 0;
};

/// Rectangular grid in the upper half plane with imaginary parts at least
/// `margin`, so every point keeps that distance from all supports. The
/// default margin is a quarter of diam(Delta_m).
template <class S>
EvaluationGrid<S> default_grid(const NikishinSystem<S>& sys, std::size_t nx = 21,
                               std::size_t ny = 21, std::optional<S> margin = std::nullopt) {
  EvaluationGrid<S> g;
  g.nx = nx;
  g.ny = ny;
  const auto dm = sys.interval(sys.size());
  S diam = dm.length();
  if (diam == 0) diam = S(1);
  g.margin = margin.value_or(diam / 4);
  require(g.margin > 0, errc::invalid_argument, "grid margin must be positive");
  auto all = sys.overall_hull();
  S re_lo = all.lo - 2 * g.margin, re_hi = all.hi + 2 * g.margin;
  S im_lo = g.margin, im_hi = g.margin + (all.hi - all.lo == 0 ? S(1) : all.hi - all.lo);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      S re = re_lo + (re_hi - re_lo) * int(ix) / int(nx - 1);
      S im = im_lo + (im_hi - im_lo) * int(iy) / int(ny - 1);
      g.points.push_back({re, im});
    }
  return g;
}

template <class S>
struct ConvergenceCell {
  int n = 0;
  std::size_t j = 0;
  S ratio_sq{};  // sup over the grid of |a_j/a_m - s^_{m,j+1}|^2
  S combined_sq{};  // sup of the combined-identity residual, squared
};

template <class S>
struct ConvergenceReport {
  EvaluationGrid<S> grid;
  std::vector<ConvergenceCell<S>> cells;
  std::vector<MultipointPadeReport> multipoint;  // per n; exact backend only

  const ConvergenceCell<S>& cell(int n, std::size_t j) const {
    for (const auto& c : cells)
      if (c.n == n && c.j == j) return c;
    fail(errc::invalid_argument, "no such convergence cell");
  }
};

/// Grid sup-errors of a_{n,j}/a_{n,m} against s^_{m,j+1} and of the combined
/// identity, for n in [n_min, n_max]: the finite-n surrogate for uniform
/// convergence on compacts off the supports.
template <class S>
ConvergenceReport<S> convergence_table(const NikishinSystem<S>& sys, int n_min, int n_max,
                                       EvaluationGrid<S> grid, SolveOptions opts = {}) {
  require(1 <= n_min && n_min <= n_max, errc::invalid_argument, "empty order range");
  const std::size_t m = sys.size();
  ConvergenceReport<S> rep;
  rep.grid = std::move(grid);
  // The transforms do not depend on n: tabulate them once per grid point.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Complex<S>>> hat;
  auto tabulate = [&](std::size_t j, std::size_t k) {
    auto key = std::make_pair(j, k);
    if (hat.count(key)) return;
    auto& v = hat[key];
    v.reserve(rep.grid.points.size());
    for (const auto& z : rep.grid.points) v.push_back(sys.s_hat(j, k, z));
  };
  for (std::size_t j = 0; j < m; ++j) {
    tabulate(m, j + 1);
    for (std::size_t k = j + 1; k <= m; ++k) tabulate(j + 1, k);
  }

  for (int n = n_min; n <= n_max; ++n) {
    auto sol = solve(sys, n, Formulation::ml, opts);
    for (std::size_t j = 0; j < m; ++j) {
      ConvergenceCell<S> cell;
      cell.n = n;
      cell.j = j;
      for (std::size_t t = 0; t < rep.grid.points.size(); ++t) {
        const auto& z = rep.grid.points[t];
        Complex<S> am = sol.a(m)(z);
        Complex<S> ratio = sol.a(j)(z) / am;
        cell.ratio_sq = std::max(cell.ratio_sq, abs_sq(ratio - hat[{m, j + 1}][t]));
        Complex<S> acc = Complex<S>(S(j % 2 == 0 ? 1 : -1)) * ratio;
        for (std::size_t k = j + 1; k + 1 <= m; ++k)
          acc = acc +
                Complex<S>(S(k % 2 == 0 ? 1 : -1)) * ((sol.a(k)(z) / am) * hat[{j + 1, k}][t]);
        acc = acc + Complex<S>(S(m % 2 == 0 ? 1 : -1)) * hat[{j + 1, m}][t];
        cell.combined_sq = std::max(cell.combined_sq, abs_sq(acc));
      }
      rep.cells.push_back(std::move(cell));
    }
    if constexpr (is_exact_v<S>) rep.multipoint.push_back(multipoint_pade_check(sol, sys));
  }
  return rep;
}

struct ZeroAccumulationRow {
  int n = 0;
  std::vector<Complex<double>> roots;
  double max_distance = 0;  // from every root of a_{n,j} to the segment Delta_m
};

namespace detail {

inline double distance_to_segment(Complex<double> z, double lo, double hi) {
  double dx = 0;
  if (z.re < lo) dx = lo - z.re;
  if (z.re > hi) dx = z.re - hi;
  return std::sqrt(dx * dx + z.im * z.im);
}

}  // namespace detail

/// Distances of the (complex) roots of a_{n,j} to Delta_m for each n.
/// Stray roots must drift toward Delta_m; numeric diagnostic.
template <class S>
std::vector<ZeroAccumulationRow> zero_accumulation(const NikishinSystem<S>& sys, int n_min,
                                                   int n_max, std::size_t j,
                                                   SolveOptions opts = {}) {
  const std::size_t m = sys.size();
  require(j + 2 <= m, errc::invalid_argument, "zero accumulation applies to j <= m-2");
  auto dm = sys.interval(m);
  double lo = to_double(dm.lo), hi = to_double(dm.hi);
  std::vector<ZeroAccumulationRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    auto sol = solve(sys, n, Formulation::ml, opts);
    ZeroAccumulationRow row;
    row.n = n;
    if (sol.a(j).degree() >= 1) {
      Polynomial<Float256> p;
      if constexpr (is_exact_v<S>) {
        p = poly_from_rational<Float256>(sol.a(j));
      } else {
        p = poly_from_rational<Float256>(lift_to_rational(sol.a(j)));
      }
      for (const auto& r : complex_roots(p)) {
        auto rd = complex_to_double(r);
        row.roots.push_back(rd);
        row.max_distance = std::max(row.max_distance, detail::distance_to_segment(rd, lo, hi));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct ClassificationReport {
  bool type_one = false;                // A_{n,0} vanishes to order >= n+1
  std::vector<bool> type_two_rows;      // a_j - a_m s^_{m,j+1} = O(1/z), j = 0..m-1
  bool pass = false;
};

namespace detail {

/// Laurent coefficient of z^q of the DR residual a_j - a_m s^_{m,j+1}.
template <class S>
S dr_row_laurent_coeff(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys,
                       std::size_t j, int q) {
  const std::size_t m = sol.m();
  S acc(0);
  if (q >= 0 && q <= sol.a(j).degree()) acc += sol.a(j)[std::size_t(q)];
  const auto& am = sol.a(m);
  int top = am.degree();
  if (top - q - 1 >= 0) {
    auto c = sys.moments(m, j + 1, std::size_t(top - q));
    for (int i = std::max(q + 1, 0); i <= top; ++i)
      acc -= am[std::size_t(i)] * c[std::size_t(i - q - 1)];
  }
  return acc;
}

}  // namespace detail

/// Re-verification of the mixed-type structure: the type I facet is the
/// deep interpolation of A_{n,0}; the type II facet is the O(1/z) vanishing
/// of every reversed-system row a_j - a_m s^_{m,j+1}.
template <class S>
ClassificationReport classify_type_one_two(const HermitePadeSolution<S>& sol,
                                           const NikishinSystem<S>& sys) {
  const std::size_t m = sol.m();
  const int n = sol.n;
  ClassificationReport rep;
  auto orders = residual_orders(sol, sys);
  rep.type_one = orders[0] >= n + 1;
  rep.pass = rep.type_one;
  for (std::size_t j = 0; j < m; ++j) {
    bool ok = true;
    S scale = std::max(S(1), abs(detail::dr_row_laurent_coeff(sol, sys, j, -1)));
    for (int q = n; q >= 0; --q)
      ok = ok && detail::coeff_is_zero(detail::dr_row_laurent_coeff(sol, sys, j, q), scale);
    rep.type_two_rows.push_back(ok);
    rep.pass = rep.pass && ok;
  }
  return rep;
}

}  // namespace nikhp
