// Acceptance suite: one line per criterion, nonzero exit if any fails.
// All tolerances are pinned here; the rational backend asserts literal
// equality, the float backend asserts the stated 2^-k budgets.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace nikhp;
using fixtures::Rng;
using R = Rational;
using F = Float256;

namespace {

struct Harness {
  int failures = 0;

  void run(const std::string& name, double budget_seconds, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs <= budget_seconds;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("%s %s (%.2fs of %.0fs budget)%s%s\n", pass ? "PASS" : "FAIL", name.c_str(), secs,
                budget_seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
};

std::vector<NikishinSystem<R>> sweep_systems() {
  std::vector<NikishinSystem<R>> out;
  Rng rng(20260810);
  int ms[] = {2, 3, 4};
  for (int i = 0; i < 10; ++i) out.push_back(fixtures::random_system(rng, ms[i % 3], 8, 12));
  return out;
}

bool criterion_1(std::string& detail) {
  auto sys = fixtures::worked_system();
  for (auto f : {Formulation::ml, Formulation::dr}) {
    auto sol = solve(sys, 1, f);
    if (!(sol.a(0) == Polynomial<R>::constant(R(5) / 12) &&
          sol.a(1) == Polynomial<R>::constant(R(1)) &&
          sol.a(2) == Polynomial<R>({R(-3), R(1)}))) {
      detail = std::string("wrong solution under ") + formulation_name(f);
      return false;
    }
  }
  return true;
}

bool criterion_2(std::string& detail) {
  auto systems = sweep_systems();
  int solves = 0;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& sys = systems[i];
    std::size_t m = sys.size();
    for (int n = 1; n <= 5; ++n) {
      auto sol = solve(sys, n, Formulation::ml);  // throws if nullspace dim != 1
      ++solves;
      if (sol.a(m).degree() != n || sol.a(m).leading() != 1) {
        detail = "degree of a_m off at system " + std::to_string(i) + ", n=" + std::to_string(n);
        return false;
      }
      for (std::size_t j = 0; j < m; ++j)
        if (sol.a(j).degree() != n - 1) {
          detail = "degree of a_" + std::to_string(j) + " off at system " + std::to_string(i);
          return false;
        }
      if (leading_coeff_residual(sol, sys) != 0) {
        detail = "leading-coefficient relation violated at system " + std::to_string(i);
        return false;
      }
      if (check_dr_ml_equivalence(sys, n) != 0) {
        detail = "DR/ML mismatch at system " + std::to_string(i) + ", n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = std::to_string(solves) + " solves across " + std::to_string(systems.size()) + " systems";
  return true;
}

bool criterion_3(std::string& detail) {
  auto systems = sweep_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (int n = 1; n <= 5; ++n) {
      auto sol = solve(systems[i], n, Formulation::ml);
      auto rep = check_zero_location(sol, systems[i], /*include_forms=*/false);
      if (!rep.pass) {
        detail = "zero location failed at system " + std::to_string(i) + ", n=" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

bool criterion_4(std::string& detail) {
  Rng rng(907);
  auto pts = fixtures::seeded_points(rng, 20);
  auto systems = sweep_systems();
  // fundamental identity at every level on the first three sweep systems
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& sys = systems[i];
    for (std::size_t j = 0; j + 2 <= sys.size(); ++j)
      if (sys.check_fundamental_identity(j, pts) != 0) {
        detail = "fundamental identity residual nonzero";
        return false;
      }
    // reduction identity with random coefficient polynomials of degree <= 5
    for (std::size_t j = 0; j + 2 <= sys.size(); ++j)
      for (std::size_t r = j + 1; r + 1 <= sys.size(); ++r) {
        LinearFormCoeffs<R> coeffs;
        for (std::size_t t = 0; t <= sys.size(); ++t) {
          std::vector<R> c;
          for (int d = 0; d <= 5; ++d) c.push_back(rng.symmetric());
          coeffs.ell.push_back(Polynomial<R>(std::move(c)));
        }
        if (sys.check_reduction_identity(coeffs, j, r, pts) != 0) {
          detail = "reduction identity residual nonzero";
          return false;
        }
      }
  }
  // Stieltjes inversion round trip at 20 seeded points (and as functions)
  for (int trial = 0; trial < 5; ++trial) {
    auto meas = fixtures::random_discrete(rng, R(0), R(3), int(rng.uniform(2, 8)));
    auto [ell, tau] = stieltjes_inverse_discrete(meas);
    auto lhs = (RationalFunction<R>::from_poly(Polynomial<R>({ell.b, ell.a})) + tau.transform()) *
               meas.transform();
    if (!(lhs == RationalFunction<R>::constant(R(1)))) {
      detail = "inversion identity not exact";
      return false;
    }
    for (const auto& z : pts) {
      auto v = meas.cauchy(z);
      auto inv = Complex<R>(R(1)) / v;
      auto rhs = Complex<R>(ell.b) + Complex<R>(ell.a) * z + tau.cauchy(z);
      if (!(abs1(inv - rhs) == 0)) {
        detail = "inversion point residual nonzero";
        return false;
      }
    }
  }
  return true;
}

bool criterion_5(std::string& detail) {
  auto two = fixtures::reference_8atom_system();
  auto bio2 = biorthogonality_matrix(two, 4);
  if (bio2.max_off_diagonal() != 0 || !(bio2.min_diagonal() > 0)) {
    detail = "two-measure matrix not biorthogonal";
    return false;
  }
  Rng rng(911);
  auto three = fixtures::random_system(rng, 3, 8, 10);
  auto bio3 = biorthogonality_matrix(three, 4);
  if (bio3.max_off_diagonal() != 0 || !(bio3.min_diagonal() > 0)) {
    detail = "three-measure matrix not biorthogonal";
    return false;
  }
  return true;
}

bool criterion_6(std::string& detail) {
  auto sys = fixtures::reference_8atom_system();
  auto rep = convergence_table(sys, 1, 5, default_grid(sys));
  const R threshold_sq = R(1) / 1000000;  // (1e-3)^2
  for (std::size_t j = 0; j < 2; ++j) {
    for (int n = 1; n < 5; ++n) {
      if (!(rep.cell(n + 1, j).ratio_sq < rep.cell(n, j).ratio_sq)) {
        detail = "con01 not decreasing at j=" + std::to_string(j) + ", n=" + std::to_string(n);
        return false;
      }
      if (!(rep.cell(n + 1, j).combined_sq <= rep.cell(n, j).combined_sq)) {
        detail = "con00 not decreasing at j=" + std::to_string(j) + ", n=" + std::to_string(n);
        return false;
      }
    }
    if (!(rep.cell(5, j).ratio_sq < threshold_sq)) {
      detail = "final error above 1e-3 at j=" + std::to_string(j);
      return false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "final errors %.2e / %.2e",
                std::sqrt(to_double(rep.cell(5, 0).ratio_sq)),
                std::sqrt(to_double(rep.cell(5, 1).ratio_sq)));
  detail = buf;
  return true;
}

bool criterion_7(std::string& detail) {
  auto systems = sweep_systems();
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (int n = 1; n <= 5; ++n) {
      auto sol = solve(systems[i], n, Formulation::ml);
      auto rep = multipoint_pade_check(sol, systems[i]);
      if (!rep.pass || rep.sign_change_count != n || rep.verified_order < n + 1) {
        detail = "multipoint structure failed at system " + std::to_string(i) +
                 ", n=" + std::to_string(n);
        return false;
      }
    }
  return true;
}

bool criterion_8(std::string& detail) {
  using P = Polynomial<R>;
  DiscreteCubicString one{{{R(0), R(1)}}, +1};
  auto wp = weyl_pair(one);
  if (!(wp.W == RationalFunction<R>(P({R(8), R(2)}), P({R(8), R(1)})) &&
        wp.Z == RationalFunction<R>(P({R(4), R(2)}), P({R(8), R(1)})))) {
    detail = "N=1 Weyl functions wrong";
    return false;
  }
  Rng rng(917);
  for (int trial = 0; trial < 8; ++trial) {
    int nmass = int(rng.uniform(1, 5));
    DiscreteCubicString s;
    s.sign_convention = trial % 2 ? 1 : -1;
    for (const auto& y : fixtures::spread_positions(rng, R(-1), R(1), nmass))
      s.masses.push_back({y, rng.unit() + R(1) / 8});
    auto pair = weyl_pair(s);
    if (!concomitant_residual(pair).is_zero()) {
      detail = "concomitant identity broken";
      return false;
    }
    auto data = spectral_measures(pair);
    if (!plucker_residual(lambda_systems(data)).is_zero()) {
      detail = "Plucker identity broken";
      return false;
    }
    if (nmass <= 3) {
      for (int n = nmass + 1; n <= nmass + 2; ++n) {
        auto rep = weyl_problem_to_nikishin(data, n);
        if (!rep.mapped_identically_zero) {
          detail = "mapped problem residuals not identically zero at n=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

bool criterion_9(std::string& detail) {
  NikishinSystem<F> leb({Measure<F>::lebesgue(F(0), F(1))});
  auto sol = solve(leb, 1, Formulation::ml);
  F tol = precision_epsilon<F>(40);
  if (!(abs(sol.a(0)[0] - 1) < tol && abs(sol.a(1)[0] + F(1) / 2) < tol && sol.a(1)[1] == 1)) {
    detail = "n=1 Pade pair is not (1, z-1/2)";
    return false;
  }
  auto rep = convergence_table(leb, 1, 8, default_grid(leb));
  for (int n = 1; n < 8; ++n)
    if (!(rep.cell(n + 1, 0).ratio_sq < rep.cell(n, 0).ratio_sq)) {
      detail = "grid error not decreasing at n=" + std::to_string(n);
      return false;
    }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "error(n=8) = %.2e", std::sqrt(to_double(rep.cell(8, 0).ratio_sq)));
  detail = buf;
  return true;
}

bool criterion_10(std::string& detail) {
  const F tol = ldexp(F(1), -200);
  // criterion 1 at 256 bits
  auto fworked = fixtures::lift_system<F>(fixtures::worked_system());
  for (auto f : {Formulation::ml, Formulation::dr}) {
    auto sol = solve(fworked, 1, f);
    if (!(abs(sol.a(0)[0] - from_rational<F>(R(5) / 12)) < tol && abs(sol.a(1)[0] - 1) < tol &&
          abs(sol.a(2)[0] + 3) < tol)) {
      detail = "float worked example off";
      return false;
    }
  }
  // criteria 2 and 3 at 256 bits against the exact oracle
  auto systems = sweep_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    auto fsys = fixtures::lift_system<F>(systems[i]);
    std::size_t m = fsys.size();
    for (int n = 1; n <= 5; ++n) {
      auto exact = solve(systems[i], n, Formulation::ml);
      for (auto f : {Formulation::ml, Formulation::dr}) {
        auto sol = solve(fsys, n, f);
        for (std::size_t j = 0; j <= m; ++j)
          for (int c = 0; c <= exact.a(j).degree(); ++c) {
            F err = abs(sol.a(j)[std::size_t(c)] - from_rational<F>(exact.a(j)[std::size_t(c)]));
            if (!(err < tol)) {
              char buf[160];
              std::snprintf(buf, sizeof(buf),
                            "coefficient error 2^%.1f at system %zu n=%d j=%zu c=%d",
                            std::log2(to_double(err)), i, n, j, c);
              detail = buf;
              return false;
            }
          }
      }
      auto sol = solve(fsys, n, Formulation::ml);
      auto rep = check_zero_location(sol, fsys);
      if (!rep.pass) {
        detail = "float zero location failed at system " + std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.run("Criterion 1: worked-example exactness (ML and DR)", 1.0, criterion_1);
  h.run("Criterion 2: existence/uniqueness, degrees, leading coefficients, DR=ML", 60.0,
        criterion_2);
  h.run("Criterion 3: zero location and interlacing (Sturm, zero tolerance)", 60.0, criterion_3);
  h.run("Criterion 4: identity battery (fundamental, reduction, inversion round trip)", 60.0,
        criterion_4);
  h.run("Criterion 5: biorthogonality matrices (exact, N=4)", 30.0, criterion_5);
  h.run("Criterion 6: convergence surrogate on the reference system", 60.0, criterion_6);
  h.run("Criterion 7: multipoint-Pade structure over the sweep", 60.0, criterion_7);
  h.run("Criterion 8: cubic-string pipeline (Weyl, identities, exact solvability)", 10.0,
        criterion_8);
  h.run("Criterion 9: m=1 Pade regression (shifted Legendre, monotone errors)", 60.0, criterion_9);
  h.run("Criterion 10: float-backend fidelity at 256 bits (< 2^-200)", 120.0, criterion_10);
  if (h.failures) {
    std::printf("%d criterion(s) failed\n", h.failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
