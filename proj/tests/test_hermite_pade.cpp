#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace nikhp;
using fixtures::Rng;
using R = Rational;
using F = Float256;

TEST_CASE("assembly dimensions and index maps") {
  auto sys = fixtures::worked_system();
  auto ml = assemble_ml(sys, 1);
  REQUIRE(ml.matrix.rows() == 3);
  REQUIRE(ml.matrix.cols() == 4);
  REQUIRE(ml.col_map.size() == 4);
  // columns cover a_0 (1 coeff), a_1 (1), a_2 (2)
  REQUIRE(ml.col_map[0].poly == 0);
  REQUIRE(ml.col_map[3].poly == 2);
  REQUIRE(ml.col_map[3].coeff == 1);

  auto dr = assemble_dr(sys, 1);
  REQUIRE(dr.matrix.rows() == 3);
  REQUIRE(dr.matrix.cols() == 4);

  // m = 1 Pade case: 2n x 2n+1
  NikishinSystem<R> single({Measure<R>::discrete(
      {{R(0), R(1)}, {R(1), R(1)}, {R(2), R(1)}})});
  auto pade = assemble_ml(single, 2);
  REQUIRE(pade.matrix.rows() == 4);
  REQUIRE(pade.matrix.cols() == 5);

  Rng rng(51);
  auto sys3 = fixtures::random_system(rng, 3, 6, 8);
  for (int n = 1; n <= 3; ++n) {
    auto a = assemble_ml(sys3, n);
    REQUIRE(a.matrix.cols() == a.matrix.rows() + 1);
    REQUIRE(a.matrix.rows() == std::size_t(n) * 4);
  }
}

TEST_CASE("worked example solves exactly under both formulations") {
  auto sys = fixtures::worked_system();
  for (auto f : {Formulation::ml, Formulation::dr}) {
    auto sol = solve(sys, 1, f);
    REQUIRE(sol.a(0) == Polynomial<R>::constant(R(5) / 12));
    REQUIRE(sol.a(1) == Polynomial<R>::constant(R(1)));
    REQUIRE(sol.a(2) == Polynomial<R>({R(-3), R(1)}));
    // both forms vanish identically for this degenerate single-atom system
    REQUIRE(sol.verified_orders[0] == kOrderInfinity);
    REQUIRE(sol.verified_orders[1] == kOrderInfinity);
  }
}

TEST_CASE("m = 1 recovers diagonal Pade (shifted Legendre for Lebesgue)") {
  NikishinSystem<F> leb({Measure<F>::lebesgue(F(0), F(1))});
  auto sol = solve(leb, 1, Formulation::ml);
  REQUIRE(abs(sol.a(0)[0] - 1) < precision_epsilon<F>(32));
  REQUIRE(abs(sol.a(1)[0] + F(1) / 2) < precision_epsilon<F>(32));
  REQUIRE(sol.verified_orders[0] == 2);
  // the next Laurent coefficient is 1/12, so the order is exactly 2
  auto orders = residual_orders(sol, leb);
  REQUIRE(orders[0] == 2);
}

TEST_CASE("form values at sample points") {
  auto sys = fixtures::worked_system();
  auto sol = solve(sys, 1, Formulation::ml);
  // A_1 is identically zero for the single-atom second generator
  auto v = form_value(sol, sys, 1, Complex<R>(R(10)));
  REQUIRE(v.re == 0);
  REQUIRE(form_value(sol, sys, 2, Complex<R>(R(10))).re == 7);
  REQUIRE(form_value(sol, sys, 0, Complex<R>(R(10))).re == 0);
}

TEST_CASE("degenerate guard refuses n beyond the smallest atom count") {
  auto sys = fixtures::worked_system();
  REQUIRE_THROWS_MATCHES(solve(sys, 2, Formulation::ml), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::degenerate_nullspace;
                         }));
  SolveOptions opts;
  opts.allow_degenerate = true;
  auto sol = solve(sys, 2, Formulation::ml, opts);
  REQUIRE(sol.degenerate);
}

TEST_CASE("DR and ML coincide exactly after monic normalization") {
  Rng rng(52);
  for (int m : {2, 3}) {
    auto sys = fixtures::random_system(rng, m, 5, 7);
    for (int n = 1; n <= 4; ++n) REQUIRE(check_dr_ml_equivalence(sys, n) == 0);
  }
}

TEST_CASE("degrees and the leading-coefficient relation") {
  Rng rng(53);
  auto sys = fixtures::random_system(rng, 3, 6, 8);
  for (int n = 1; n <= 4; ++n) {
    auto sol = solve(sys, n, Formulation::ml);
    REQUIRE(sol.a(3).degree() == n);
    REQUIRE(sol.a(3).leading() == 1);
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(sol.a(j).degree() == n - 1);
    REQUIRE(leading_coeff_residual(sol, sys) == 0);
  }
}

TEST_CASE("zero location and interlacing on the reference system") {
  auto sys = fixtures::reference_8atom_system();
  for (int n = 1; n <= 4; ++n) {
    auto sol = solve(sys, n, Formulation::ml);
    auto rep = check_zero_location(sol, sys);
    INFO("n = " << n);
    for (const auto& e : rep.entries) INFO(e.label << ": " << (e.pass ? "ok" : "FAIL"));
    REQUIRE(rep.pass);
    REQUIRE(rep.roots_a_m.size() == std::size_t(n));
    for (double r : rep.roots_a_m) {
      REQUIRE(r > 4.0);
      REQUIRE(r < 12.0);
    }
  }
}

TEST_CASE("scaling a generator leaves the monic solution's roots unchanged") {
  Rng rng(54);
  auto base = fixtures::random_system(rng, 2, 5, 6);
  std::vector<Measure<R>> scaled_gens;
  for (std::size_t j = 1; j <= 2; ++j) {
    std::vector<std::pair<R, R>> atoms;
    for (const auto& a : base.generator(j).atoms()) atoms.push_back({a.x, a.w * 7});
    scaled_gens.push_back(Measure<R>::discrete(std::move(atoms)));
  }
  NikishinSystem<R> scaled(std::move(scaled_gens));
  for (int n = 1; n <= 3; ++n) {
    auto s0 = solve(base, n, Formulation::ml);
    auto s1 = solve(scaled, n, Formulation::ml);
    REQUIRE(s0.a(2) == s1.a(2));  // monic a_m is scale invariant
  }
}

TEST_CASE("multipoint Pade structure: order plus certified sign changes") {
  auto sys = fixtures::reference_8atom_system();
  for (int n = 1; n <= 4; ++n) {
    auto sol = solve(sys, n, Formulation::ml);
    auto rep = multipoint_pade_check(sol, sys);
    REQUIRE(rep.sign_change_count == n);
    REQUIRE(rep.simple);
    REQUIRE(rep.verified_order >= n + 1);
    REQUIRE(rep.pass);
  }
  // degenerate worked example: the form vanishes identically
  auto degenerate = solve(fixtures::worked_system(), 1, Formulation::ml);
  auto rep = multipoint_pade_check(degenerate, fixtures::worked_system());
  REQUIRE(rep.degenerate_zero_form);
  REQUIRE(rep.pass);
}

TEST_CASE("orthogonality sums vanish numerically with the reconstructed weight") {
  auto rsys = fixtures::reference_8atom_system();
  auto fsys = fixtures::lift_system<F>(rsys);
  for (int n = 1; n <= 3; ++n) {
    auto sol = solve(fsys, n, Formulation::ml);
    REQUIRE(orthogonality_sums_residual(sol, fsys) < precision_epsilon<F>(64));
  }
  // m = 1 continuous: classical orthogonality of the Pade denominator
  NikishinSystem<F> leb({Measure<F>::lebesgue(F(0), F(1))});
  for (int n = 1; n <= 3; ++n) {
    auto sol = solve(leb, n, Formulation::ml);
    REQUIRE(orthogonality_sums_residual(sol, leb) < precision_epsilon<F>(64));
  }
}

TEST_CASE("float solve matches the exact oracle to 2^-200 after normalization") {
  Rng rng(55);
  auto rsys = fixtures::random_system(rng, 2, 8, 10);
  auto fsys = fixtures::lift_system<F>(rsys);
  F tol = ldexp(F(1), -200);
  for (int n = 1; n <= 4; ++n) {
    auto exact = solve(rsys, n, Formulation::ml);
    auto approx = solve(fsys, n, Formulation::ml);
    for (std::size_t j = 0; j <= 2; ++j) {
      for (int i = 0; i <= exact.a(j).degree(); ++i) {
        F want = from_rational<F>(exact.a(j)[std::size_t(i)]);
        REQUIRE(abs(approx.a(j)[std::size_t(i)] - want) < tol);
      }
    }
  }
}

TEST_CASE("zigzag interval chains keep the coefficient law with signed masses") {
  // Delta_3 lies left of Delta_1: the reversed product s_{3,2} is negative,
  // so the leading coefficients pick up the signed zeroth moment.
  Rng rng(56);
  std::vector<Measure<R>> gens;
  gens.push_back(fixtures::random_discrete(rng, R(0), R(1), 4));
  gens.push_back(fixtures::random_discrete(rng, R(2), R(3), 4));
  gens.push_back(fixtures::random_discrete(rng, R(-2), R(-1), 4));
  NikishinSystem<R> sys(std::move(gens));
  REQUIRE(sys.moments(3, 2, 1)[0] < 0);
  for (int n = 1; n <= 3; ++n) {
    auto sol = solve(sys, n, Formulation::ml);
    REQUIRE(leading_coeff_residual(sol, sys) == 0);
    REQUIRE(check_dr_ml_equivalence(sys, n) == 0);
    REQUIRE(sol.verified_orders[0] >= n + 1);
  }
}

TEST_CASE("mixed continuous/discrete chains solve on the float backend") {
  auto leb = Measure<F>::lebesgue(F(0), F(1));
  auto atoms = Measure<F>::discrete({{F(2), F(1) / 2}, {F(5) / 2, F(1) / 4}, {F(3), F(1) / 4}});
  NikishinSystem<F> sys({leb, atoms});
  for (int n = 1; n <= 3; ++n) {
    auto sol = solve(sys, n, Formulation::ml);
    REQUIRE(sol.a(2).degree() == n);
    REQUIRE(sol.verified_orders[0] >= n + 1);
    REQUIRE(residual_within(check_dr_ml_equivalence(sys, n), 40));
  }
  std::vector<Complex<F>> pts{{F(5), F(1)}, {F(-1), F(2)}};
  REQUIRE(sys.check_fundamental_identity(0, pts) < precision_epsilon<F>(32));
}

TEST_CASE("real_roots windows filter correctly") {
  Polynomial<R> p({R(-1), R(0), R(1)});  // z^2 - 1
  auto roots = real_roots(p, Interval<R>{R(0), R(2)});
  REQUIRE(roots.size() == 1);
  REQUIRE(abs(roots[0] - 1) < R(1) / 1000000);
  auto linear = real_roots(Polynomial<R>({R(-3), R(1)}), Interval<R>{R(2), R(4)});
  REQUIRE(linear.size() == 1);
  REQUIRE(linear[0] == 3);
}
