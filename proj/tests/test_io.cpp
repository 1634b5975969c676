#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace nikhp;
using fixtures::Rng;
using R = Rational;
using F = Float256;

TEST_CASE("rational parsing accepts integers, doubles, and p/q strings") {
  REQUIRE(rational_from_json(json(3)) == 3);
  REQUIRE(rational_from_json(json("3/4")) == R(3) / 4);
  REQUIRE(rational_from_json(json("-12")) == -12);
  REQUIRE(rational_from_json(json(0.5)) == R(1) / 2);  // binary doubles are exact
  REQUIRE(rational_to_string(R(-5) / 7) == "-5/7");
  REQUIRE(rational_to_string(R(4)) == "4");
}

TEST_CASE("hex float strings round-trip exactly") {
  Rng rng(81);
  for (int i = 0; i < 10; ++i) {
    F x = from_rational<F>(rng.symmetric(100, 97)) / 3;
    std::string s = float_to_hex(x);
    REQUIRE(float_from_string<F>(s) == x);
    REQUIRE(scalar_from_json<F>(json(s)) == x);
  }
}

TEST_CASE("measure configs round-trip") {
  json dj = {{"type", "discrete"}, {"atoms", {{0, "1/2"}, {1, "1/2"}}}};
  auto d = measure_from_json<R>(dj);
  REQUIRE(d.atoms().size() == 2);
  REQUIRE(d.atoms()[0].w == R(1) / 2);
  auto back = measure_from_json<R>(measure_to_json(d));
  REQUIRE(back.atoms()[1].x == 1);

  json cj = {{"type", "continuous"},
             {"interval", {0, 1}},
             {"weight", {{"family", "jacobi"}, {"alpha", 1}, {"beta", 2}}},
             {"sign", 1}};
  auto c = measure_from_json<F>(cj);
  REQUIRE(c.is_continuous());
  auto cj2 = measure_to_json(c);
  REQUIRE(cj2["weight"]["alpha"] == 1);

  // resolvent measures serialize through their transform
  auto tau = Measure<R>::resolvent(
      RationalFunction<R>(Polynomial<R>::constant(R(3) / 2), Polynomial<R>({R(8), R(1)})));
  auto tj = measure_to_json(tau);
  auto tau2 = measure_from_json<R>(tj);
  REQUIRE(tau2.transform() == tau.transform());
}

TEST_CASE("system config parses ordered generator lists") {
  json sj = {{"measures",
              {{{"type", "discrete"}, {"atoms", {{0, "1/2"}, {1, "1/2"}}}},
               {{"type", "discrete"}, {"atoms", {{3, 1}}}}}}};
  auto sys = system_from_json<R>(sj);
  REQUIRE(sys.size() == 2);
  auto sol = solve(sys, 1, Formulation::ml);
  REQUIRE(sol.a(0) == Polynomial<R>::constant(R(5) / 12));

  auto round = system_from_json<R>(system_to_json(sys));
  REQUIRE(round.size() == 2);
}

TEST_CASE("solution serialization carries exact coefficients and orders") {
  auto sys = fixtures::worked_system();
  auto sol = solve(sys, 1, Formulation::ml);
  auto j = solution_to_json(sol);
  REQUIRE(j["backend"] == "rational");
  REQUIRE(j["polynomials"][2][0] == "-3");
  REQUIRE(j["polynomials"][2][1] == "1");
  REQUIRE(j["verified_orders"][0] == "identically-zero");
}

TEST_CASE("string config") {
  json sj = {{"atoms", {{0, 1}}}, {"sign_convention", 1}};
  auto s = string_from_json(sj);
  REQUIRE(s.masses.size() == 1);
  auto wp = weyl_pair(s);
  REQUIRE(wp.W(R(0)) == 1);

  json bad = {{"atoms", {{"3/2", 1}}}};
  REQUIRE_THROWS_AS(string_from_json(bad), error);
}

TEST_CASE("cache export/import round-trips") {
  auto sys = fixtures::worked_system();
  (void)sys.moments(1, 2, 6);
  auto j = cache_to_json(sys);
  auto fresh = fixtures::worked_system();
  cache_from_json(fresh, j);
  REQUIRE(fresh.moments(1, 2, 6) == sys.moments(1, 2, 6));
}

TEST_CASE("convergence csv has one row per cell") {
  auto sys = fixtures::worked_system();
  auto rep = convergence_table(sys, 1, 1, default_grid(sys, 3, 3));
  auto csv = convergence_to_csv(rep);
  REQUIRE(csv.find("n,j,ratio_error,combined_error") == 0);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cells
}

TEST_CASE("svg chart emits a standalone document") {
  SvgSeries s{"j=0", {1, 2, 3}, {1e-1, 1e-3, 1e-6}};
  auto svg = svg_log_chart("test", {s});
  REQUIRE(svg.rfind("<svg", 0) == 0);
  REQUIRE(svg.find("polyline") != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);
}
