#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nikhp/linalg.hpp"
#include "nikhp/nikishin.hpp"

namespace nikhp {

enum class Formulation { ml, dr };

inline const char* formulation_name(Formulation f) { return f == Formulation::ml ? "ml" : "dr"; }

/// Row/column bookkeeping of the homogeneous interpolation system:
/// n(m+1) rows (vanishing Laurent coefficients) on n(m+1)+1 unknown
/// polynomial coefficients.
template <class S>
struct AssembledSystem {
  struct ColKey {
    std::size_t poly;   // which a_{n,poly}
    std::size_t coeff;  // which power of z
  };
  struct RowKey {
    std::size_t form;  // which interpolation block
    int power;         // the z power whose Laurent coefficient this row kills
  };

  Matrix<S> matrix;
  std::vector<ColKey> col_map;
  std::vector<RowKey> row_map;
};

template <class S>
struct HermitePadeSolution {
  int n = 0;
  Formulation formulation = Formulation::ml;
  std::vector<Polynomial<S>> polys;  // a_{n,0} ... a_{n,m}, a_{n,m} monic
  /// Vanishing order of each form A_{n,j}, j = 0..m-1, measured from the
  /// Laurent expansion (kOrderInfinity when the form vanishes identically).
  std::vector<int> verified_orders;
  /// a_{n,m} was rescaled to monic of degree n (always, outside the
  /// degenerate regime).
  bool monic = false;
  /// Nullspace dimension exceeded one (discrete exhaustion); the returned
  /// vector is one representative and no degree guarantees apply.
  bool degenerate = false;

  const Polynomial<S>& a(std::size_t j) const { return polys[j]; }
  std::size_t m() const { return polys.size() - 1; }
};

namespace detail {

/// Polynomial coefficient limits: deg a_j <= n-1 for j < m, deg a_m <= n.
inline std::size_t coeff_count(std::size_t j, std::size_t m, int n) {
  return j == m ? std::size_t(n) + 1 : std::size_t(n);
}

template <class S>
AssembledSystem<S> make_empty_system(std::size_t m, int n) {
  AssembledSystem<S> sys;
  std::size_t cols = 0;
  for (std::size_t j = 0; j <= m; ++j) cols += coeff_count(j, m, n);
  std::size_t rows = cols - 1;
  sys.matrix = Matrix<S>(rows, cols);
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t i = 0; i < coeff_count(j, m, n); ++i) sys.col_map.push_back({j, i});
  return sys;
}

template <class S>
std::size_t col_index(const AssembledSystem<S>& sys, std::size_t poly, std::size_t coeff) {
  for (std::size_t c = 0; c < sys.col_map.size(); ++c)
    if (sys.col_map[c].poly == poly && sys.col_map[c].coeff == coeff) return c;
  fail(errc::invalid_argument, "column lookup out of range");
}

}  // namespace detail

/// Multi-level assembly: block j = 0 kills the Laurent coefficients of
/// z^{n-1}..z^{-n} of A_{n,0}; blocks j = 1..m-1 kill z^{n-1}..z^0 of
/// A_{n,j}. Signs alternate as (-1)^k inside each form.
template <class S>
AssembledSystem<S> assemble_ml(const NikishinSystem<S>& sys, int n) {
  require(n >= 1, errc::invalid_argument, "order must be at least 1");
  const std::size_t m = sys.size();
  auto out = detail::make_empty_system<S>(m, n);
  // Moment prefixes for every inner-level product s_{j+1,k}, j < k.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<S>> mom;
  for (std::size_t j = 0; j + 1 <= m; ++j)
    for (std::size_t k = j + 1; k <= m; ++k) mom[{j + 1, k}] = sys.moments(j + 1, k, 2 * n);

  std::size_t row = 0;
  for (std::size_t j = 0; j < m; ++j) {
    int q_lo = j == 0 ? -n : 0;
    for (int q = n - 1; q >= q_lo; --q) {
      out.row_map.push_back({j, q});
      // (-1)^j a_j contributes its z^q coefficient directly.
      if (q >= 0 && std::size_t(q) < detail::coeff_count(j, m, n)) {
        out.matrix(row, detail::col_index(out, j, std::size_t(q))) = S(j % 2 == 0 ? 1 : -1);
      }
      for (std::size_t k = j + 1; k <= m; ++k) {
        const auto& c = mom[{j + 1, k}];
        S sign(k % 2 == 0 ? 1 : -1);
        for (std::size_t i = std::size_t(std::max(q + 1, 0)); i < detail::coeff_count(k, m, n);
             ++i) {
          std::size_t t = std::size_t(int(i) - q - 1);
          require(t < c.size(), errc::insufficient_moments, "moment prefix too short");
          out.matrix(row, detail::col_index(out, k, i)) = sign * c[t];
        }
      }
      ++row;
    }
  }
  require(row == out.matrix.rows(), errc::invalid_argument, "row fill mismatch");
  return out;
}

/// Direct/reversed assembly: the j = 0 block matches the ML one; blocks
/// j = 1..m-1 kill the polynomial part of a_j - a_m s^_{m,j+1}, which uses
/// the reversed products.
template <class S>
AssembledSystem<S> assemble_dr(const NikishinSystem<S>& sys, int n) {
  require(n >= 1, errc::invalid_argument, "order must be at least 1");
  const std::size_t m = sys.size();
  auto out = detail::make_empty_system<S>(m, n);
  std::map<std::size_t, std::vector<S>> mom1;  // s_{1,k} for the top form
  for (std::size_t k = 1; k <= m; ++k) mom1[k] = sys.moments(1, k, 2 * n);
  std::map<std::size_t, std::vector<S>> momr;  // reversed s_{m,j+1}
  for (std::size_t j = 1; j < m; ++j) momr[j] = sys.moments(m, j + 1, 2 * n);

  std::size_t row = 0;
  for (int q = n - 1; q >= -n; --q) {
    out.row_map.push_back({0, q});
    if (q >= 0 && std::size_t(q) < detail::coeff_count(0, m, n))
      out.matrix(row, detail::col_index(out, std::size_t(0), std::size_t(q))) = S(1);
    for (std::size_t k = 1; k <= m; ++k) {
      const auto& c = mom1[k];
      S sign(k % 2 == 0 ? 1 : -1);
      for (std::size_t i = std::size_t(std::max(q + 1, 0)); i < detail::coeff_count(k, m, n); ++i)
        out.matrix(row, detail::col_index(out, k, i)) = sign * c[std::size_t(int(i) - q - 1)];
    }
    ++row;
  }
  for (std::size_t j = 1; j < m; ++j) {
    const auto& c = momr[j];
    for (int q = n - 1; q >= 0; --q) {
      out.row_map.push_back({j, q});
      if (std::size_t(q) < detail::coeff_count(j, m, n))
        out.matrix(row, detail::col_index(out, j, std::size_t(q))) = S(1);
      for (std::size_t i = std::size_t(q + 1); i < detail::coeff_count(m, m, n); ++i)
        out.matrix(row, detail::col_index(out, m, i)) = -c[std::size_t(int(i) - q - 1)];
      ++row;
    }
  }
  require(row == out.matrix.rows(), errc::invalid_argument, "row fill mismatch");
  return out;
}

struct SolveOptions {
  /// Accept a nullspace of dimension > 1 and return one representative
  /// (used past the discrete exactness threshold, where the interpolation
  /// conditions hold identically and uniqueness is genuinely lost).
  bool allow_degenerate = false;
};

namespace detail {

template <class S>
std::vector<Polynomial<S>> split_solution(const AssembledSystem<S>& asys,
                                          const std::vector<S>& x, std::size_t m, int n) {
  std::vector<std::vector<S>> coeffs(m + 1);
  for (std::size_t j = 0; j <= m; ++j) coeffs[j].assign(coeff_count(j, m, n), S(0));
  for (std::size_t c = 0; c < asys.col_map.size(); ++c)
    coeffs[asys.col_map[c].poly][asys.col_map[c].coeff] = x[c];
  std::vector<Polynomial<S>> polys;
  for (auto& v : coeffs) polys.push_back(Polynomial<S>(std::move(v)));
  return polys;
}

/// Coefficient considered zero: exactly for the rational backend, below
/// 2^(-p+48) relative to the largest coefficient for floats.
template <class S>
bool coeff_is_zero(const S& c, const S& scale) {
  if constexpr (is_exact_v<S>) {
    (void)scale;
    return c == 0;
  } else {
    return abs(c) <= precision_epsilon<S>(48) * scale;
  }
}

template <class S>
S coeff_scale(const Polynomial<S>& p) {
  S s(1);
  for (const auto& c : p.coeffs()) s = std::max(s, abs(c));
  return s;
}

template <class S>
S pow_int_f(const S& x, int k) {
  S acc(1);
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

/// Laurent coefficient of z^q of the ML form A_{n,j} for a given solution.
template <class S>
S form_laurent_coeff(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys,
                     std::size_t j, int q) {
  const std::size_t m = sol.m();
  S acc(0);
  const auto& aj = sol.a(j);
  if (j < m && q >= 0 && q <= aj.degree()) acc += S(j % 2 == 0 ? 1 : -1) * aj[std::size_t(q)];
  if (j == m) return q >= 0 && q <= aj.degree() ? aj[std::size_t(q)] : S(0);
  for (std::size_t k = j + 1; k <= m; ++k) {
    const auto& ak = sol.a(k);
    if (ak.is_zero()) continue;
    int top = ak.degree();
    if (top - q - 1 < 0) continue;
    auto c = sys.moments(j + 1, k, std::size_t(top - q));
    S sign(k % 2 == 0 ? 1 : -1);
    for (int i = std::max(q + 1, 0); i <= top; ++i)
      acc += sign * ak[std::size_t(i)] * c[std::size_t(i - q - 1)];
  }
  return acc;
}

}  // namespace detail

/// The exact rational function A_{n,j} (discrete-kind systems only).
template <class S>
RationalFunction<Rational> form_ratfun(const HermitePadeSolution<S>& sol,
                                       const NikishinSystem<S>& sys, std::size_t j) {
  static_assert(is_exact_v<S>);
  const std::size_t m = sol.m();
  require(j <= m, errc::invalid_argument, "form index out of range");
  if (j == m) return RationalFunction<Rational>::from_poly(sol.a(m));
  RationalFunction<Rational> acc =
      RationalFunction<Rational>::from_poly(S(j % 2 == 0 ? 1 : -1) * sol.a(j));
  for (std::size_t k = j + 1; k <= m; ++k) {
    Rational sign(k % 2 == 0 ? 1 : -1);
    acc = acc + sign * (sol.a(k) * sys.s_hat_fun(j + 1, k));
  }
  return acc;
}

/// The DR residual a_j - a_m s^_{m,j+1} as an exact rational function.
template <class S>
RationalFunction<Rational> dr_row_ratfun(const HermitePadeSolution<S>& sol,
                                         const NikishinSystem<S>& sys, std::size_t j) {
  static_assert(is_exact_v<S>);
  const std::size_t m = sol.m();
  require(j < m, errc::invalid_argument, "row index out of range");
  return RationalFunction<Rational>::from_poly(sol.a(j)) - sol.a(m) * sys.s_hat_fun(m, j + 1);
}

/// Vanishing orders of the forms A_{n,0..m-1} from the Laurent expansion,
/// scanned down to z^-(n+5) (2n+4 moment terms). Exact-backend runs confirm
/// an all-zero scan as identical vanishing via the rational function.
template <class S>
std::vector<int> residual_orders(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys) {
  const std::size_t m = sol.m();
  const int n = sol.n;
  std::vector<int> orders;
  for (std::size_t j = 0; j < m; ++j) {
    int top_power = n - 1;
    int bottom_power = -(n + 5);
    std::optional<int> first_nonzero;
    S scale(1);
    std::vector<S> coeffs;
    for (int q = top_power; q >= bottom_power; --q) {
      S c = detail::form_laurent_coeff(sol, sys, j, q);
      scale = std::max(scale, abs(c));
      coeffs.push_back(c);
    }
    for (int q = top_power, idx = 0; q >= bottom_power; --q, ++idx) {
      if (!detail::coeff_is_zero(coeffs[std::size_t(idx)], scale)) {
        first_nonzero = q;
        break;
      }
    }
    if (first_nonzero) {
      orders.push_back(-*first_nonzero);
    } else if constexpr (is_exact_v<S>) {
      orders.push_back(form_ratfun(sol, sys, j).is_zero() ? kOrderInfinity
                                                          : n + 6 /* beyond the scan */);
    } else {
      orders.push_back(n + 6);
    }
  }
  return orders;
}

/// Solve the homogeneous interpolation system, normalize a_{n,m} monic, and
/// verify the degree pattern (n-1, ..., n-1, n).
template <class S>
HermitePadeSolution<S> solve(const NikishinSystem<S>& sys, int n, Formulation formulation,
                             SolveOptions opts = {}) {
  require(n >= 1, errc::invalid_argument, "order must be at least 1");
  const std::size_t m = sys.size();
  if (!opts.allow_degenerate && sys.all_discrete()) {
    std::size_t cap = sys.min_atom_count();
    require(std::size_t(n) <= cap, errc::degenerate_nullspace,
            "order " + std::to_string(n) + " exceeds the smallest atom count " +
                std::to_string(cap) +
                ": the forms vanish identically and uniqueness fails in this regime");
  }
  AssembledSystem<S> asys;
  std::vector<std::vector<S>> basis;
  if constexpr (is_exact_v<S>) {
    asys = formulation == Formulation::ml ? assemble_ml<S>(sys, n) : assemble_dr<S>(sys, n);
    basis = exact_nullspace(asys.matrix);
  } else {
    // The solution depends on the data only through its moments, and in
    // moment coordinates the system is far worse conditioned than in the
    // measure itself. Rebuild moments and eliminate at double width from the
    // exactly-embedded generators, then round the nullvectors back; rank
    // detection stays relative to the backend precision.
    using W = wide_scalar_t<S>;
    auto wide_sys = widen_system<W>(sys);
    auto wide_asys =
        formulation == Formulation::ml ? assemble_ml<W>(wide_sys, n) : assemble_dr<W>(wide_sys, n);
    auto wide_basis = float_nullspace(wide_asys.matrix, W(precision_epsilon<S>(48)));
    for (const auto& ck : wide_asys.col_map) asys.col_map.push_back({ck.poly, ck.coeff});
    for (const auto& wv : wide_basis) {
      std::vector<S> v;
      v.reserve(wv.size());
      for (const auto& x : wv) v.push_back(S(x));
      basis.push_back(std::move(v));
    }
  }
  require(!basis.empty(), errc::degenerate_nullspace, "empty nullspace (assembly bug)");

  HermitePadeSolution<S> sol;
  sol.n = n;
  sol.formulation = formulation;
  sol.degenerate = basis.size() > 1;
  if (sol.degenerate && !opts.allow_degenerate)
    fail(errc::degenerate_nullspace,
         "nullspace dimension " + std::to_string(basis.size()) +
             " (discrete-measure exhaustion or precision collapse)");

  // Among basis vectors prefer one whose a_m reaches full degree n.
  std::size_t pick = 0;
  {
    int best_deg = -2;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto polys = detail::split_solution(asys, basis[b], m, n);
      if (polys[m].degree() > best_deg) {
        best_deg = polys[m].degree();
        pick = b;
      }
    }
  }
  sol.polys = detail::split_solution(asys, basis[pick], m, n);

  // Monic normalization of a_m, justified by the nonzero leading coefficient.
  Polynomial<S>& am = sol.polys[m];
  S scale_m = detail::coeff_scale(am);
  bool lead_ok = am.degree() == n && !detail::coeff_is_zero(am.leading(), scale_m);
  if (!lead_ok && !sol.degenerate)
    fail(errc::degree_violation, "leading coefficient of a_m vanishes (expected degree " +
                                     std::to_string(n) + ", got " + std::to_string(am.degree()) +
                                     ")");
  if (lead_ok) {
    S lead = am.leading();
    for (auto& p : sol.polys) p = p / lead;
    if constexpr (!is_exact_v<S>) {
      // Round away the solver noise in the top coefficient.
      auto c = sol.polys[m].coeffs();
      c.back() = S(1);
      sol.polys[m] = Polynomial<S>(std::move(c));
    }
    sol.monic = true;
  }

  if (!sol.degenerate) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& aj = sol.polys[j];
      bool deg_ok = aj.degree() == n - 1;
      if constexpr (!is_exact_v<S>) {
        // Trailing float noise may pad the degree; judge the top coefficient.
        deg_ok = aj.degree() == n - 1 &&
                 !detail::coeff_is_zero(aj[std::size_t(n - 1)], detail::coeff_scale(aj));
      }
      if (!deg_ok)
        fail(errc::degree_violation,
             "deg a_" + std::to_string(j) + " = " + std::to_string(aj.degree()) + ", expected " +
                 std::to_string(n - 1));
    }
    sol.verified_orders = residual_orders(sol, sys);
    for (std::size_t j = 0; j < m; ++j) {
      int need = j == 0 ? n + 1 : 1;
      require(sol.verified_orders[j] >= need, errc::degree_violation,
              "form order below the defining bound");
    }
  } else {
    sol.verified_orders = residual_orders(sol, sys);
  }
  return sol;
}

/// A_{n,j}(z) evaluated numerically (j = m gives the polynomial a_m).
template <class S>
Complex<S> form_value(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys,
                      std::size_t j, const Complex<S>& z) {
  const std::size_t m = sol.m();
  require(j <= m, errc::invalid_argument, "form index out of range");
  if (j == m) return sol.a(m)(z);
  Complex<S> acc = Complex<S>(S(j % 2 == 0 ? 1 : -1)) * sol.a(j)(z);
  for (std::size_t k = j + 1; k <= m; ++k)
    acc = acc + Complex<S>(S(k % 2 == 0 ? 1 : -1)) * (sol.a(k)(z) * sys.s_hat(j + 1, k, z));
  return acc;
}

/// Both formulations solved and normalized; returns the largest coefficient
/// difference across the vector (exactly zero on the rational backend).
template <class S>
S check_dr_ml_equivalence(const NikishinSystem<S>& sys, int n, SolveOptions opts = {}) {
  auto ml = solve(sys, n, Formulation::ml, opts);
  auto dr = solve(sys, n, Formulation::dr, opts);
  S worst(0);
  for (std::size_t j = 0; j < ml.polys.size(); ++j) {
    int top = std::max(ml.a(j).degree(), dr.a(j).degree());
    for (int i = 0; i <= top; ++i)
      worst = std::max(worst, abs(ml.a(j)[std::size_t(i)] - dr.a(j)[std::size_t(i)]));
  }
  return worst;
}

/// Residual of the leading-coefficient relation
/// a_{n,j}^{(n-1)} = a_{n,m}^{(n)} * mass(s_{m,j+1}), j = 1..m-1.
template <class S>
S leading_coeff_residual(const HermitePadeSolution<S>& sol, const NikishinSystem<S>& sys) {
  const std::size_t m = sol.m();
  const int n = sol.n;
  S lead_m = sol.a(m)[std::size_t(n)];
  S worst(0);
  for (std::size_t j = 1; j < m; ++j) {
    S expect = lead_m * sys.moments(m, j + 1, 1)[0];
    worst = std::max(worst, abs(sol.a(j)[std::size_t(n - 1)] - expect));
  }
  return worst;
}

struct ZeroLocationEntry {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct ZeroLocationReport {
  bool pass = true;
  std::vector<ZeroLocationEntry> entries;
  std::vector<double> roots_a_m;
  std::vector<double> roots_a_m1;

  void add(std::string label, bool ok, std::string detail = "") {
    pass = pass && ok;
    entries.push_back({std::move(label), ok, std::move(detail)});
  }
};

namespace detail {

/// Roots of p in the open window, as displayable doubles.
template <class S>
std::vector<double> root_mids(const Polynomial<S>& p, const Interval<S>& window) {
  std::vector<double> out;
  for (const auto& r : real_roots(p, window)) out.push_back(to_double(r));
  return out;
}

}  // namespace detail

/// Zero location and interlacing checks: a_m has n simple roots in the
/// interior of Delta_m, the n-1 roots of a_{m-1} strictly interlace them,
/// and each form A_{n,j} (j = 1..m-1) carries exactly n simple zeros, all
/// inside Delta_j and none elsewhere off Delta_{j+1}. Form-level checks are
/// exact (Sturm counts on the rational backend); float runs verify the two
/// polynomial root patterns through the dyadic lift.
template <class S>
ZeroLocationReport check_zero_location(const HermitePadeSolution<S>& sol,
                                       const NikishinSystem<S>& sys, bool include_forms = true) {
  ZeroLocationReport rep;
  const std::size_t m = sol.m();
  const int n = sol.n;
  const Interval<S>& dm = sys.interval(m);

  auto count_in = [](const Polynomial<Rational>& p, const Rational& lo, const Rational& hi) {
    return count_real_roots(p, lo, hi);
  };

  Polynomial<Rational> am, am1;
  Rational lo, hi;
  if constexpr (is_exact_v<S>) {
    am = sol.a(m);
    am1 = sol.a(m - 1);
    lo = dm.lo;
    hi = dm.hi;
  } else {
    am = lift_to_rational(sol.a(m));
    am1 = lift_to_rational(sol.a(m - 1));
    lo = rational_from_float(dm.lo);
    hi = rational_from_float(dm.hi);
  }

  rep.add("a_m has n simple roots in int(Delta_m)",
          count_in(am, lo, hi) == n && is_squarefree(am) && count_all_real_roots(am) == n);
  bool am1_in = am1.is_zero() ? n == 1 : count_in(am1, lo, hi) == n - 1;
  rep.add("a_{m-1} has n-1 roots in int(Delta_m)", am1_in);
  if (n > 1)
    rep.add("roots of a_{m-1} strictly interlace roots of a_m",
            roots_strictly_interlace(am, am1, lo, hi));
  rep.roots_a_m = detail::root_mids(sol.a(m), dm);
  if (!sol.a(m - 1).is_zero() && m >= 1) rep.roots_a_m1 = detail::root_mids(sol.a(m - 1), dm);

  if constexpr (is_exact_v<S>) {
    if (!include_forms) return rep;
    // Zero counts for the forms themselves, not just the polynomials.
    {
      auto f0 = form_ratfun(sol, sys, 0);
      if (f0.is_zero()) {
        rep.add("A_0 has no zero off Delta_1", true, "form vanishes identically (degenerate)");
      } else {
        auto sf = squarefree_part(f0.num());
        const Interval<S>& d1 = sys.interval(1);
        int inside_closed = count_real_roots(sf, d1.lo, d1.hi) + (sf(d1.lo) == 0 ? 1 : 0) +
                            (sf(d1.hi) == 0 ? 1 : 0);
        bool no_outside = is_squarefree(f0.num()) && count_all_real_roots(sf) == sf.degree() &&
                          inside_closed == sf.degree();
        rep.add("A_0 has no zero off Delta_1", no_outside);
        rep.add("A_0 interpolation coefficient at 1/z^{n+1} is nonzero",
                sol.verified_orders[0] == n + 1);
      }
    }
    for (std::size_t j = 1; j < m; ++j) {
      auto fj = form_ratfun(sol, sys, j);
      std::string label = "A_" + std::to_string(j) + " has exactly n simple zeros in int(Delta_j)";
      if (fj.is_zero()) {
        rep.add(label, true, "form vanishes identically (degenerate)");
        continue;
      }
      const Interval<S>& dj = sys.interval(j);
      const Interval<S>& djn = sys.interval(j + 1);
      auto num = fj.num();
      auto sf = squarefree_part(num);
      int inside = count_real_roots(sf, dj.lo, dj.hi) + (sf(dj.lo) == 0 ? 1 : 0) +
                   (sf(dj.hi) == 0 ? 1 : 0);
      // Everything off Delta_{j+1}: total minus the distinct roots inside it.
      int in_next = count_real_roots(sf, djn.lo, djn.hi) + (sf(djn.lo) == 0 ? 1 : 0) +
                    (sf(djn.hi) == 0 ? 1 : 0);
      bool ok = is_squarefree(num) && count_real_roots(sf, dj.lo, dj.hi) == n &&
                sf.degree() - in_next == n && inside == n;
      rep.add(label, ok);
    }
  }
  return rep;
}

struct MultipointPadeReport {
  bool degenerate_zero_form = false;  // A_{m-1} vanishes identically
  int order_at_infinity = 0;
  int sign_change_count = 0;  // zeros of A_{m-1} in int(Delta_{m-1}); deg w
  bool simple = false;
  int verified_order = 0;  // order of A_{m-1}/w at infinity
  bool pass = false;
};

/// Multipoint-Pade structure of a_{m-1}/a_m: dividing A_{m-1} by the monic
/// polynomial w vanishing at its sign changes must give order >= n+1 at
/// infinity. The division is order arithmetic on the exact rational
/// function: ord(A/w) = ord(A) + deg w, with deg w certified by the Sturm
/// count of the numerator zeros inside Delta_{m-1} (those sign-change points
/// are algebraic, so the quotient itself is not rationally representable).
template <class S>
MultipointPadeReport multipoint_pade_check(const HermitePadeSolution<S>& sol,
                                           const NikishinSystem<S>& sys) {
  static_assert(is_exact_v<S>, "the exact check needs the rational backend");
  MultipointPadeReport rep;
  const std::size_t m = sol.m();
  const int n = sol.n;
  auto f = form_ratfun(sol, sys, m - 1);
  if (f.is_zero()) {
    rep.degenerate_zero_form = true;
    rep.pass = true;
    rep.simple = true;
    rep.order_at_infinity = kOrderInfinity;
    rep.verified_order = kOrderInfinity;
    return rep;
  }
  rep.order_at_infinity = f.order_at_infinity();
  if (m == 1) {
    // w is constant: the condition is the top interpolation block itself.
    rep.sign_change_count = 0;
    rep.simple = true;
    rep.verified_order = rep.order_at_infinity;
    rep.pass = rep.verified_order >= n + 1;
    return rep;
  }
  const Interval<S>& w_window = sys.interval(m - 1);
  const auto& num = f.num();
  rep.sign_change_count = count_real_roots(num, w_window.lo, w_window.hi);
  auto crit = poly_gcd(num, num.derivative());
  rep.simple = crit.degree() == 0 || count_real_roots(crit, w_window.lo, w_window.hi) == 0;
  rep.verified_order = rep.order_at_infinity == kOrderInfinity
                           ? kOrderInfinity
                           : rep.order_at_infinity + rep.sign_change_count;
  rep.pass = rep.sign_change_count == n && rep.simple && rep.verified_order >= n + 1;
  return rep;
}

/// Literal evaluation of the orthogonality sums
///   int x^v a_m(x) d s_{m,m}(x) / w(x) = 0, v = 0..n-1,
/// with w rebuilt numerically from the sign changes of A_{m-1}. Returns the
/// largest normalized sum; float backend (the sign-change points are
/// algebraic numbers, so exact arithmetic cannot carry the literal sums).
template <class F>
F orthogonality_sums_residual(const HermitePadeSolution<F>& sol, const NikishinSystem<F>& sys) {
  static_assert(!is_exact_v<F>);
  const std::size_t m = sol.m();
  const int n = sol.n;
  const auto& sigma_m = sys.generator(m);

  Polynomial<F> w = Polynomial<F>::constant(F(1));
  if (m >= 2) {
    // Numerator of A_{m-1} over the poles of s^_{m,m}: only discrete sigma_m
    // keeps this polynomial-valued.
    require(sigma_m.is_discrete_kind(), errc::backend_unsupported,
            "orthogonality sums need a discrete last generator when m >= 2");
    Polynomial<F> phi = Polynomial<F>::constant(F(1));
    for (const auto& a : sigma_m.atoms()) phi = phi * Polynomial<F>({-a.x, F(1)});
    Polynomial<F> psi{};
    for (const auto& a : sigma_m.atoms()) {
      Polynomial<F> rest = Polynomial<F>::constant(a.w);
      for (const auto& b : sigma_m.atoms())
        if (&b != &a) rest = rest * Polynomial<F>({-b.x, F(1)});
      psi = psi + rest;
    }
    Polynomial<F> numerator = sol.a(m - 1) * phi - sol.a(m) * psi;
    auto roots = real_roots(numerator, sys.interval(m - 1));
    require(int(roots.size()) == n, errc::root_precision_loss,
            "sign-change polynomial has unexpected degree");
    w = Polynomial<F>::from_roots(roots);
  }

  F worst(0);
  for (int v = 0; v < n; ++v) {
    F acc(0), scale(1);
    if (sigma_m.is_discrete_kind()) {
      for (const auto& atom : sigma_m.atoms()) {
        F term = detail::pow_int_f(atom.x, v) * sol.a(m)(atom.x) * atom.w / w(atom.x);
        acc += term;
        scale += abs(term);
      }
    } else {
      acc = integrate(
          [&](const F& x) { return detail::pow_int_f(x, v) * sol.a(m)(x) * sigma_m.density(x) / w(x); },
          sigma_m.continuous_data().interval.lo, sigma_m.continuous_data().interval.hi);
      scale += abs(sol.a(m)(sigma_m.continuous_data().interval.hi)) + 1;
    }
    worst = std::max(worst, abs(acc) / scale);
  }
  return worst;
}

/// Real roots of p inside the window, to relative precision 2^-(p-8) on the
/// float backend (exact isolation plus Newton polish via the dyadic lift).
template <class S>
std::vector<S> real_roots(const Polynomial<S>& p, const Interval<S>& window) {
  require(!p.is_zero(), errc::invalid_argument, "roots of the zero polynomial");
  if constexpr (is_exact_v<S>) {
    std::vector<S> out;
    for (auto iv : isolate_real_roots(p, window.lo, window.hi)) {
      S width = (abs(iv.midpoint()) + 1) / Rational(std::int64_t(1) << 62);
      out.push_back(refine_root(p, iv, width).midpoint());
    }
    return out;
  } else {
    auto lifted = lift_to_rational(p);
    auto los = rational_from_float(window.lo), his = rational_from_float(window.hi);
    std::vector<S> out;
    for (auto iv : isolate_real_roots(lifted, los, his)) {
      if (iv.exact()) {
        out.push_back(from_rational<S>(iv.lo));
        continue;
      }
      auto tight = refine_root(lifted, iv, (abs(iv.midpoint()) + 1) / 1024);
      out.push_back(polish_root(p, from_rational<S>(tight.lo), from_rational<S>(tight.hi)));
    }
    return out;
  }
}

}  // namespace nikhp
