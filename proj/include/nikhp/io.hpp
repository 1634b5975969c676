#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>

#include "nikhp/analysis.hpp"
#include "nikhp/cubic_string.hpp"

namespace nikhp {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars: rationals travel as "p/q" strings, floats as hex-float strings.
// ---------------------------------------------------------------------------

inline Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    // Binary doubles convert exactly.
    double d = v.get<double>();
    require(std::isfinite(d), errc::invalid_argument, "non-finite number in config");
    return rational_from_float(Float256(d));
  }
  if (v.is_string()) return Rational(v.get<std::string>());
  fail(errc::invalid_argument, "expected a rational (number or \"p/q\" string)");
}

inline std::string rational_to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

template <class F>
std::string float_to_hex(const F& x) {
  static_assert(!is_exact_v<F>);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", x.backend().data());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

/// Parses decimal or 0x-prefixed hex-float strings, both exact in binary.
template <class F>
F float_from_string(const std::string& s) {
  static_assert(!is_exact_v<F>);
  F x;
  int rc = mpfr_set_str(x.backend().data(), s.c_str(), 0, MPFR_RNDN);
  require(rc == 0, errc::invalid_argument, "cannot parse float literal \"" + s + "\"");
  return x;
}

template <class S>
json scalar_to_json(const S& x) {
  if constexpr (is_exact_v<S>) {
    return rational_to_string(x);
  } else {
    return float_to_hex(x);
  }
}

template <class S>
S scalar_from_json(const json& v) {
  if constexpr (is_exact_v<S>) {
    return rational_from_json(v);
  } else {
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find('/') != std::string::npos) return from_rational<S>(Rational(s));
      return float_from_string<S>(s);
    }
    if (v.is_number_integer()) return S(v.get<long long>());
    if (v.is_number_float()) return S(v.get<double>());
    fail(errc::invalid_argument, "expected a float (number or string)");
  }
}

// ---------------------------------------------------------------------------
// Measures and systems.
// ---------------------------------------------------------------------------

template <class S>
Measure<S> measure_from_json(const json& j) {
  require(j.is_object() && j.contains("type"), errc::invalid_argument,
          "measure config needs a \"type\"");
  std::string type = j.at("type").get<std::string>();
  if (type == "discrete") {
    std::vector<std::pair<S, S>> atoms;
    for (const auto& a : j.at("atoms")) {
      require(a.is_array() && a.size() == 2, errc::invalid_argument,
              "discrete atom must be [position, weight]");
      atoms.push_back({scalar_from_json<S>(a[0]), scalar_from_json<S>(a[1])});
    }
    std::optional<Interval<S>> declared;
    if (j.contains("interval")) {
      const auto& iv = j.at("interval");
      require(iv.is_array() && iv.size() == 2, errc::invalid_argument, "interval must be [a, b]");
      declared = Interval<S>{scalar_from_json<S>(iv[0]), scalar_from_json<S>(iv[1])};
    }
    return Measure<S>::discrete(std::move(atoms), std::move(declared));
  }
  if (type == "continuous") {
    const auto& iv = j.at("interval");
    require(iv.is_array() && iv.size() == 2, errc::invalid_argument, "interval must be [a, b]");
    S lo = scalar_from_json<S>(iv[0]), hi = scalar_from_json<S>(iv[1]);
    int sign = j.value("sign", 1);
    std::string family = "constant";
    int alpha = 0, beta = 0;
    if (j.contains("weight")) {
      family = j.at("weight").value("family", "constant");
      alpha = j.at("weight").value("alpha", 0);
      beta = j.at("weight").value("beta", 0);
    }
    if (family == "constant") return Measure<S>::lebesgue(std::move(lo), std::move(hi), sign);
    if (family == "jacobi")
      return Measure<S>::jacobi(std::move(lo), std::move(hi), alpha, beta, sign);
    fail(errc::invalid_argument, "unknown weight family \"" + family + "\"");
  }
  if (type == "resolvent") {
    if constexpr (is_exact_v<S>) {
      std::vector<Rational> num, den;
      for (const auto& c : j.at("num")) num.push_back(rational_from_json(c));
      for (const auto& c : j.at("den")) den.push_back(rational_from_json(c));
      return Measure<S>::resolvent(
          RationalFunction<Rational>(Polynomial<Rational>(num), Polynomial<Rational>(den)));
    } else {
      fail(errc::backend_unsupported, "resolvent measures live on the exact backend");
    }
  }
  fail(errc::invalid_argument, "unknown measure type \"" + type + "\"");
}

template <class S>
json measure_to_json(const Measure<S>& m) {
  json j;
  switch (m.kind()) {
    case MeasureKind::discrete: {
      j["type"] = "discrete";
      j["atoms"] = json::array();
      for (const auto& a : m.atoms()) j["atoms"].push_back({scalar_to_json(a.x), scalar_to_json(a.w)});
      auto hull = m.support_hull();
      j["interval"] = {scalar_to_json(hull.lo), scalar_to_json(hull.hi)};
      return j;
    }
    case MeasureKind::resolvent: {
      if constexpr (is_exact_v<S>) {
        auto t = m.transform();
        j["type"] = "resolvent";
        for (const auto& c : t.num().coeffs()) j["num"].push_back(rational_to_string(c));
        for (const auto& c : t.den().coeffs()) j["den"].push_back(rational_to_string(c));
        j["atom_count"] = m.atom_count();
        return j;
      }
      fail(errc::backend_unsupported, "resolvent measures live on the exact backend");
    }
    case MeasureKind::continuous: {
      const auto& c = m.continuous_data();
      j["type"] = "continuous";
      j["interval"] = {scalar_to_json(c.interval.lo), scalar_to_json(c.interval.hi)};
      j["sign"] = c.sign;
      j["weight"]["family"] = c.family == WeightFamily::constant ? "constant" : "jacobi";
      if (c.family == WeightFamily::jacobi) {
        j["weight"]["alpha"] = c.alpha;
        j["weight"]["beta"] = c.beta;
      }
      if (c.monomial_power) j["monomial_power"] = c.monomial_power;
      return j;
    }
  }
  fail(errc::invalid_argument, "unreachable");
}

template <class S>
NikishinSystem<S> system_from_json(const json& j) {
  const json& arr = j.is_array() ? j : j.at("measures");
  require(arr.is_array() && !arr.empty(), errc::invalid_argument,
          "system config needs a nonempty measure list");
  std::vector<Measure<S>> gens;
  for (const auto& mj : arr) gens.push_back(measure_from_json<S>(mj));
  return NikishinSystem<S>(std::move(gens));
}

template <class S>
json system_to_json(const NikishinSystem<S>& sys) {
  json arr = json::array();
  for (std::size_t j = 1; j <= sys.size(); ++j) arr.push_back(measure_to_json(sys.generator(j)));
  return json{{"measures", arr}};
}

inline DiscreteCubicString string_from_json(const json& j) {
  DiscreteCubicString s;
  for (const auto& a : j.at("atoms")) {
    require(a.is_array() && a.size() == 2, errc::invalid_argument,
            "string atom must be [position, mass]");
    s.masses.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
  }
  s.sign_convention = j.value("sign_convention", 1);
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Solutions and reports.
// ---------------------------------------------------------------------------

template <class S>
json polynomial_to_json(const Polynomial<S>& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(scalar_to_json(c));
  return arr;
}

/// Compact display form, low-to-high: "5/12", "-3 + z", "1 - 2 z^2".
template <class S>
std::string polynomial_to_string(const Polynomial<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= p.degree(); ++i) {
    const S& c = p[std::size_t(i)];
    if (c == 0) continue;
    std::string mag;
    if constexpr (is_exact_v<S>) {
      mag = rational_to_string(abs(c));
    } else {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", to_double(abs(c)));
      mag = buf;
    }
    std::string term = (mag == "1" && i > 0) ? "" : mag;
    if (i == 1) term += term.empty() ? "z" : " z";
    if (i > 1) term += (term.empty() ? "z^" : " z^") + std::to_string(i);
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

template <class S>
json solution_to_json(const HermitePadeSolution<S>& sol) {
  json j;
  j["n"] = sol.n;
  j["formulation"] = formulation_name(sol.formulation);
  j["backend"] = scalar_traits<S>::name();
  j["monic"] = sol.monic;
  j["degenerate"] = sol.degenerate;
  j["polynomials"] = json::array();
  for (const auto& p : sol.polys) j["polynomials"].push_back(polynomial_to_json(p));
  j["verified_orders"] = json::array();
  for (int o : sol.verified_orders)
    j["verified_orders"].push_back(o == kOrderInfinity ? json("identically-zero") : json(o));
  return j;
}

inline json zero_location_to_json(const ZeroLocationReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["checks"] = json::array();
  for (const auto& e : rep.entries) {
    json c{{"label", e.label}, {"pass", e.pass}};
    if (!e.detail.empty()) c["detail"] = e.detail;
    j["checks"].push_back(c);
  }
  j["roots_a_m"] = rep.roots_a_m;
  j["roots_a_m_minus_1"] = rep.roots_a_m1;
  return j;
}

template <class S>
json convergence_to_json(const ConvergenceReport<S>& rep) {
  json j;
  j["backend"] = scalar_traits<S>::name();
  j["grid"] = {{"points", rep.grid.points.size()},
               {"nx", rep.grid.nx},
               {"ny", rep.grid.ny},
               {"margin", to_double(rep.grid.margin)}};
  j["cells"] = json::array();
  for (const auto& c : rep.cells)
    j["cells"].push_back({{"n", c.n},
                          {"j", c.j},
                          {"ratio_error", std::sqrt(to_double(c.ratio_sq))},
                          {"combined_error", std::sqrt(to_double(c.combined_sq))}});
  j["multipoint"] = json::array();
  for (const auto& mp : rep.multipoint)
    j["multipoint"].push_back({{"pass", mp.pass},
                               {"degenerate", mp.degenerate_zero_form},
                               {"sign_changes", mp.sign_change_count},
                               {"verified_order", mp.verified_order == kOrderInfinity
                                                      ? json("identically-zero")
                                                      : json(mp.verified_order)}});
  return j;
}

template <class S>
std::string convergence_to_csv(const ConvergenceReport<S>& rep) {
  std::string out = "n,j,ratio_error,combined_error\n";
  char buf[128];
  for (const auto& c : rep.cells) {
    std::snprintf(buf, sizeof(buf), "%d,%zu,%.12e,%.12e\n", c.n, c.j,
                  std::sqrt(to_double(c.ratio_sq)), std::sqrt(to_double(c.combined_sq)));
    out += buf;
  }
  return out;
}

inline json weyl_mapping_to_json(const WeylMappingReport& rep) {
  auto ord = [](int o) {
    return o == kOrderInfinity ? json("identically-zero") : json(o);
  };
  json j;
  j["n"] = rep.n;
  j["exactness_threshold"] = rep.exactness_threshold;
  j["mapped_identically_zero"] = rep.mapped_identically_zero;
  j["normalized_P0_equals_1"] = rep.normalized;
  j["P_hat_vanishes_at_0"] = rep.p_hat_zero_at_origin;
  j["a0_degree_bound_holds"] = rep.a0_degree_ok;
  j["orders"] = {{"weyl_deep", ord(rep.weyl_deep_order)},
                 {"weyl_w_row", ord(rep.weyl_w_row_order)},
                 {"weyl_z_row", ord(rep.weyl_z_row_order)},
                 {"lambda_deep", ord(rep.lambda_deep_order)},
                 {"lambda_w_row", ord(rep.lambda_w_row_order)},
                 {"lambda_z_row", ord(rep.lambda_z_row_order)}};
  j["zero_mass_defect"] = {{"constant", rational_to_string(rep.defect_constant)},
                           {"japi_identity", rep.deep_defect_identity},
                           {"japiib_identity", rep.z_row_defect_identity},
                           {"deep_corrected_order", ord(rep.deep_corrected_order)},
                           {"z_row_corrected_order", ord(rep.z_row_corrected_order)}};
  j["Q"] = polynomial_to_json(rep.Q);
  j["P"] = polynomial_to_json(rep.P);
  j["P_hat"] = polynomial_to_json(rep.P_hat);
  return j;
}

template <class S>
json cache_to_json(const NikishinSystem<S>& sys) {
  json entries = json::array();
  for (const auto& [j, k, measure, moments] : sys.cache_snapshot()) {
    json e{{"j", j}, {"k", k}, {"measure", measure_to_json(*measure)}};
    e["moments"] = json::array();
    for (const auto& c : moments) e["moments"].push_back(scalar_to_json(c));
    entries.push_back(e);
  }
  return json{{"cache", entries}};
}

template <class S>
void cache_from_json(const NikishinSystem<S>& sys, const json& j) {
  for (const auto& e : j.at("cache")) {
    std::vector<S> moments;
    for (const auto& c : e.at("moments")) moments.push_back(scalar_from_json<S>(c));
    sys.cache_restore(e.at("j").get<std::size_t>(), e.at("k").get<std::size_t>(),
                      measure_from_json<S>(e.at("measure")), std::move(moments));
  }
}

}  // namespace nikhp
