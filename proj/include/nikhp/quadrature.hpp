#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "nikhp/errors.hpp"
#include "nikhp/scalar.hpp"

namespace nikhp {

template <class F>
struct GaussLegendreRule {
  std::vector<F> nodes;    // on (-1, 1), ascending
  std::vector<F> weights;  // positive, sum = 2
};

namespace detail {

/// P_n(x) and P_{n-1}(x) by the three-term recurrence.
template <class F>
std::pair<F, F> legendre_pair(unsigned n, const F& x) {
  F p0(1), p1 = x;
  if (n == 0) return {p0, F(0)};
  for (unsigned k = 1; k < n; ++k) {
    F p2 = ((2 * int(k) + 1) * x * p1 - int(k) * p0) / int(k + 1);
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

template <class F>
GaussLegendreRule<F> compute_gauss_legendre(unsigned n) {
  GaussLegendreRule<F> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const F pi = 4 * atan(F(1));
  const F tol = precision_epsilon<F>(4);
  for (unsigned i = 0; i < n; ++i) {
    // Tricomi-style initial guess, then Newton.
    F x = cos(pi * (F(int(i)) + F(3) / 4) / (F(int(n)) + F(1) / 2));
    F dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, pm1] = legendre_pair(n, x);
      dp = int(n) * (x * p - pm1) / (x * x - 1);
      F dx = p / dp;
      x -= dx;
      if (abs(dx) <= tol * (abs(x) + 1)) break;
    }
    auto [p, pm1] = legendre_pair(n, x);
    dp = int(n) * (x * p - pm1) / (x * x - 1);
    rule.nodes[n - 1 - i] = x;  // guesses come out descending
    rule.weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace detail

/// Cached Gauss-Legendre rule on [-1, 1] for the float scalar F.
template <class F>
const GaussLegendreRule<F>& gauss_legendre(unsigned n) {
  static_assert(!is_exact_v<F>, "quadrature requires a float backend");
  static std::map<unsigned, GaussLegendreRule<F>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre<F>(n)).first;
  return it->second;
}

namespace detail {

template <class F>
F result_norm(const F& v) {
  return abs(v);
}
template <class F>
F result_norm(const Complex<F>& v) {
  return abs1(v);
}

}  // namespace detail

inline constexpr unsigned kQuadratureStartNodes = 64;
inline constexpr unsigned kQuadratureMaxNodes = 4096;

/// Integrate f over [a, b] by Gauss-Legendre with node doubling, stopping when
/// two successive values agree to 2^(-p+16) relative (p = precision bits).
template <class F, class Fn>
auto integrate(Fn&& f, const F& a, const F& b) {
  static_assert(!is_exact_v<F>, "quadrature requires a float backend");
  using R = decltype(f(a));
  const F tol = precision_epsilon<F>(16);
  const F mid = (a + b) / 2, half = (b - a) / 2;
  R prev{};
  bool have_prev = false;
  for (unsigned n = kQuadratureStartNodes; n <= kQuadratureMaxNodes; n *= 2) {
    const auto& rule = gauss_legendre<F>(n);
    R acc{};
    for (unsigned i = 0; i < n; ++i) {
      F x = mid + half * rule.nodes[i];
      acc = acc + rule.weights[i] * f(x);
    }
    acc = half * acc;
    if (have_prev) {
      F scale = std::max(F(1), detail::result_norm(acc));
      if (detail::result_norm(acc - prev) <= tol * scale) return acc;
    }
    prev = acc;
    have_prev = true;
  }
  fail(errc::quadrature_not_converged, "node doubling exhausted without agreement");
}

}  // namespace nikhp
