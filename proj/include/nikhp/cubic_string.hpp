#pragma once

#include <string>
#include <vector>

#include "nikhp/analysis.hpp"

namespace nikhp {

/// Positions and masses of the discrete cubic string on (-1, 1). The sign
/// convention multiplies the spectral parameter in the mass jumps: the
/// equation as written gives a negative spectrum for positive masses, its
/// mirror gives the positive spectrum quoted in the peakon literature; all
/// identities hold under either choice, so both stay first-class.
struct DiscreteCubicString {
  struct Mass {
    Rational y;
    Rational g;
  };
  std::vector<Mass> masses;  // -1 < y_1 < ... < y_N < 1, g_i > 0
  int sign_convention = 1;

  void validate() const {
    require(sign_convention == 1 || sign_convention == -1, errc::invalid_argument,
            "sign convention must be +1 or -1");
    Rational prev(-1);
    for (const auto& m : masses) {
      require(prev < m.y && m.y < 1, errc::invalid_argument,
              "mass positions must be strictly increasing inside (-1, 1)");
      require(m.g > 0, errc::invalid_argument, "masses must be positive");
      prev = m.y;
    }
  }
};

/// phi and its first two derivatives at the right endpoint, as polynomials
/// in the spectral parameter (phi(-1) = phi_y(-1) = 0, phi_yy(-1) = 1).
struct EndState {
  Polynomial<Rational> value;  // phi(1; z), degree N
  Polynomial<Rational> d1;     // phi_y(1; z)
  Polynomial<Rational> d2;     // phi_yy(1; z)
};

/// Transfer across the string: between masses phi propagates as a quadratic
/// in y; at each mass phi_yy jumps by (convention * z * g * phi).
inline EndState propagate(const DiscreteCubicString& s) {
  s.validate();
  using P = Polynomial<Rational>;
  EndState st{P{}, P{}, P::constant(Rational(1))};
  const P z = P::identity();
  Rational pos(-1);
  auto gap = [&](const Rational& next) {
    Rational len = next - pos;
    st.value = st.value + len * st.d1 + (len * len / 2) * st.d2;
    st.d1 = st.d1 + len * st.d2;
    pos = next;
  };
  for (const auto& m : s.masses) {
    gap(m.y);
    st.d2 = st.d2 + Rational(s.sign_convention) * m.g * (z * st.value);
  }
  gap(Rational(1));
  return st;
}

struct EigenvalueReport {
  int count = 0;
  bool all_real = false;
  bool all_simple = false;
  int positive = 0;  // reported, never asserted: the sign depends on the
  int negative = 0;  // chosen convention
  bool zero_is_eigenvalue = false;
  std::vector<double> approx;  // refined root midpoints
};

/// Roots of phi(1; z) with realness/simplicity certified by Sturm counts.
inline EigenvalueReport eigenvalues(const DiscreteCubicString& s) {
  EigenvalueReport rep;
  auto st = propagate(s);
  const auto& p = st.value;
  if (p.degree() < 1) return rep;
  rep.count = p.degree();
  rep.all_simple = is_squarefree(p);
  auto sf = squarefree_part(p);
  rep.all_real = count_all_real_roots(sf) == p.degree() && rep.all_simple;
  Rational bound = root_bound(sf);
  rep.positive = count_real_roots(sf, Rational(0), bound);
  rep.negative = count_real_roots(sf, -bound, Rational(0));
  rep.zero_is_eigenvalue = sf(Rational(0)) == 0;
  for (const auto& iv : isolate_all_real_roots(sf)) {
    auto tight = refine_root(sf, iv, (abs(iv.midpoint()) + 1) / Rational(std::int64_t(1) << 48));
    rep.approx.push_back(to_double(tight.midpoint()));
  }
  return rep;
}

/// Weyl functions W = phi_y(1)/phi(1) and Z = phi_yy(1)/phi(1), reduced.
struct WeylPair {
  RationalFunction<Rational> W;
  RationalFunction<Rational> Z;
  Polynomial<Rational> char_poly;  // phi(1; z) before reduction
};

inline WeylPair weyl_pair(const DiscreteCubicString& s) {
  require(!s.masses.empty(), errc::invalid_argument, "Weyl functions need at least one mass");
  auto st = propagate(s);
  return {RationalFunction<Rational>(st.d1, st.value),
          RationalFunction<Rational>(st.d2, st.value), st.value};
}

/// Z(z) - W(z)W(-z) + Z(-z), identically zero by the vanishing of the
/// bilinear concomitant at opposite spectral parameters.
inline RationalFunction<Rational> concomitant_residual(const WeylPair& p) {
  return p.Z - p.W * p.W.reflected() + p.Z.reflected();
}

/// Max residual of the concomitant identity over sample points.
inline Rational check_concomitant(const WeylPair& p, const std::vector<Rational>& points) {
  auto res = concomitant_residual(p);
  Rational worst(0);
  for (const auto& z : points) worst = std::max(worst, abs(res(z)));
  return worst;
}

/// Spectral measures: W(z)/z = mu^(z) and Z(z)/z = nu^(z), exact partial
/// fractions carried in resolvent form (the poles are the eigenvalues).
struct SpectralData {
  Measure<Rational> mu;
  Measure<Rational> nu;
  RationalFunction<Rational> W;
  RationalFunction<Rational> Z;

  /// Number of string masses N; mu has N+1 atoms including the origin.
  std::size_t string_size() const { return mu.atom_count() - 1; }
};

inline SpectralData spectral_measures(const WeylPair& pair) {
  auto over_z = [](const RationalFunction<Rational>& f) {
    return f / RationalFunction<Rational>::from_poly(Polynomial<Rational>::identity());
  };
  return {Measure<Rational>::resolvent(over_z(pair.W)), Measure<Rational>::resolvent(over_z(pair.Z)),
          pair.W, pair.Z};
}

/// Diagnostic for the closed-form density d nu(x) = (x int d mu(y)/(x+y)) d mu(x):
/// it reproduces nu away from the origin but annihilates the mass nu({0}).
struct NuFormulaReport {
  RationalFunction<Rational> difference;  // nu^ - (formula measure)^
  bool matches_off_zero = false;          // difference is exactly c/z
  Rational zero_atom_residue{};           // that c; equals Z(0) when matching
};

inline NuFormulaReport check_nu_formula(const SpectralData& data) {
  NuFormulaReport rep;
  if (data.mu.empty()) return rep;
  auto mu_t = data.mu.transform();
  // g(x) = -x * mu^(-x): the formula density under the reflected kernel.
  RationalFunction<Rational> g =
      -(Polynomial<Rational>::identity() * mu_t.reflected());
  auto formula = reweight_transform(mu_t, g);
  rep.difference = data.nu.transform() - formula;
  auto times_z = Polynomial<Rational>::identity() * rep.difference;
  if (times_z.is_polynomial() && times_z.num().degree() <= 0) {
    rep.matches_off_zero = true;
    rep.zero_atom_residue = times_z.num().is_zero() ? Rational(0) : times_z.num()[0];
  }
  return rep;
}

/// The two reflected/tilted measures and the pair of mutually reversed
/// Nikishin systems they generate.
struct LambdaSystems {
  Measure<Rational> lambda1;  // reflect(mu)
  Measure<Rational> lambda2;  // tilt(mu)
  NikishinSystem<Rational> direct;    // N(lambda1, lambda2)
  NikishinSystem<Rational> reversed;  // N(lambda2, lambda1)
};

inline LambdaSystems lambda_systems(const SpectralData& data) {
  auto l1 = data.mu.reflect();
  auto l2 = data.mu.tilt();
  require(disjoint(l1.support_hull(), l2.support_hull()), errc::interval_overlap,
          "reflected and tilted supports must be disjoint");
  NikishinSystem<Rational> direct({l1, l2});
  NikishinSystem<Rational> reversed({l2, l1});
  return {std::move(l1), std::move(l2), std::move(direct), std::move(reversed)};
}

/// Max residual over sample points of
/// lambda^_{2,1} - lambda^_{2,2} lambda^_{1,1} + lambda^_{1,2} = 0
/// (the fundamental identity of the order-2 system in appendix notation).
inline Rational check_plucker(const LambdaSystems& ls, const std::vector<Complex<Rational>>& pts) {
  return ls.direct.check_fundamental_identity(0, pts);
}

/// The same identity as an exact rational function (empty iff it holds).
inline RationalFunction<Rational> plucker_residual(const LambdaSystems& ls) {
  return ls.reversed.s_hat_fun(1, 2) - ls.reversed.s_hat_fun(1, 1) * ls.direct.s_hat_fun(1, 1) +
         ls.direct.s_hat_fun(1, 2);
}

/// Full reduction of the Weyl approximation problem to Nikishin form, with
/// the solve, the reconstruction of (P^, P, Q), and order verification of
/// every interpolation condition against the exact W and Z.
struct WeylMappingReport {
  int n = 0;
  std::size_t exactness_threshold = 0;  // N+1: all residuals vanish identically from here on

  Measure<Rational> sigma1;  // tau_{1,1} from Stieltjes inversion of lambda^_{1,1}
  Measure<Rational> sigma2;  // lambda_{2,1}
  AffineTerm<Rational> ell;  // the affine part of the inversion
  HermitePadeSolution<Rational> solution;

  RationalFunction<Rational> mapped_deep, mapped_row;  // residuals of the mapped problem
  bool mapped_identically_zero = false;

  Polynomial<Rational> P_hat, P, Q, P_star, P_tilde;
  bool normalized = false;  // P(0) = 1 achieved
  bool p_hat_zero_at_origin = false;
  bool a0_degree_ok = false;  // deg(z P* + Q c0(lambda_{1,2})) <= n-1

  // Orders at infinity of the boundary-problem residuals (order >= v means
  // O(1/z^v); 0 means O(1)).
  RationalFunction<Rational> weyl_deep, weyl_w_row, weyl_z_row;
  int weyl_deep_order = 0, weyl_w_row_order = 0, weyl_z_row_order = 0;
  int lambda_deep_order = 0, lambda_w_row_order = 0, lambda_z_row_order = 0;

  // The zero-mass defect: the classical reduction drops the nu({0}) atom,
  // so the deep and Z rows miss their stated orders by exactly
  // defect_constant * Q.
  Rational defect_constant{};            // Z(0) - W(0)^2
  bool deep_defect_identity = false;   // weyl_deep - defect*Q == z * lambda_deep exactly
  bool z_row_defect_identity = false;  // weyl_z_row + Z(0)*Q == z * lambda_z_row exactly
  int deep_corrected_order = 0;
  int z_row_corrected_order = 0;
};

inline WeylMappingReport weyl_problem_to_nikishin(const SpectralData& data, int n) {
  require(n >= 1, errc::invalid_argument, "order must be at least 1");
  using RF = RationalFunction<Rational>;
  using P = Polynomial<Rational>;
  WeylMappingReport rep;
  rep.n = n;
  rep.exactness_threshold = data.string_size() + 1;

  auto ls = lambda_systems(data);
  auto [ell, sigma1] = stieltjes_inverse_discrete(ls.lambda1);
  auto sigma2 = *ls.reversed.product_measure(1, 2);  // lambda_{2,1}
  rep.ell = ell;
  rep.sigma1 = sigma1;
  rep.sigma2 = sigma2;

  NikishinSystem<Rational> mapped({sigma1, sigma2});
  SolveOptions opts;
  opts.allow_degenerate = true;
  rep.solution = solve(mapped, n, Formulation::ml, opts);

  rep.mapped_deep = form_ratfun(rep.solution, mapped, 0);
  rep.mapped_row = dr_row_ratfun(rep.solution, mapped, 1);
  rep.mapped_identically_zero = rep.mapped_deep.is_zero() && rep.mapped_row.is_zero();

  // Invert the appendix substitutions (masses are signed zeroth moments).
  Rational c0_l11 = ls.lambda1.mass();
  Rational c0_l12 = ls.direct.product_measure(1, 2)->mass();
  Rational c0_alpha = data.mu.mass();
  rep.Q = -rep.solution.a(2);
  rep.P_star = -rep.solution.a(1);
  P z_pstar = P::identity() * rep.P_star;
  P bracket = z_pstar + c0_l12 * rep.Q;
  rep.a0_degree_ok = bracket.degree() <= n - 1;
  rep.P_tilde = bracket / c0_l11 + ell.b * rep.P_star - rep.solution.a(0);
  rep.P = rep.P_tilde + c0_alpha * rep.Q;
  rep.P_hat = z_pstar;

  Rational p0 = rep.P(Rational(0));
  if (p0 != 0) {
    rep.normalized = true;
    for (P* poly : {&rep.P_hat, &rep.P, &rep.Q, &rep.P_star, &rep.P_tilde}) *poly = *poly / p0;
  }
  rep.p_hat_zero_at_origin = rep.P_hat(Rational(0)) == 0;

  const RF& W = data.W;
  const RF& Z = data.Z;
  rep.weyl_deep = RF::from_poly(rep.P_hat) - rep.P * W.reflected() + rep.Q * Z.reflected();
  rep.weyl_w_row = RF::from_poly(rep.P) - rep.Q * W;
  rep.weyl_z_row = RF::from_poly(rep.P_hat) - rep.Q * Z;
  rep.weyl_deep_order = rep.weyl_deep.order_at_infinity();
  rep.weyl_w_row_order = rep.weyl_w_row.order_at_infinity();
  rep.weyl_z_row_order = rep.weyl_z_row.order_at_infinity();

  RF l11 = ls.direct.s_hat_fun(1, 1);
  RF l12 = ls.direct.s_hat_fun(1, 2);
  RF l22 = ls.reversed.s_hat_fun(1, 1);
  RF l21 = ls.reversed.s_hat_fun(1, 2);
  RF lambda_deep = RF::from_poly(rep.P_star) - rep.P_tilde * l11 + rep.Q * l12;
  RF lambda_w_row = RF::from_poly(rep.P_tilde) - rep.Q * l22;
  RF lambda_z_row = RF::from_poly(rep.P_star) - rep.Q * l21;
  rep.lambda_deep_order = lambda_deep.order_at_infinity();
  rep.lambda_w_row_order = lambda_w_row.order_at_infinity();
  rep.lambda_z_row_order = lambda_z_row.order_at_infinity();

  Rational w0 = W(Rational(0));
  Rational z0 = Z(Rational(0));
  rep.defect_constant = z0 - w0 * w0;
  RF zrf = RF::from_poly(P::identity());
  RF deep_corrected = rep.weyl_deep - rep.defect_constant * RF::from_poly(rep.Q);
  RF z_row_corrected = rep.weyl_z_row + z0 * RF::from_poly(rep.Q);
  rep.deep_defect_identity = (deep_corrected - zrf * lambda_deep).is_zero();
  rep.z_row_defect_identity = (z_row_corrected - zrf * lambda_z_row).is_zero();
  rep.deep_corrected_order = deep_corrected.order_at_infinity();
  rep.z_row_corrected_order = z_row_corrected.order_at_infinity();
  return rep;
}

}  // namespace nikhp
