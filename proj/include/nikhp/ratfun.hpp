#pragma once

#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "nikhp/polynomial.hpp"

namespace nikhp {

/// Order sentinel for the identically-zero function: O(1/z^v) for every v.
inline constexpr int kOrderInfinity = std::numeric_limits<int>::max();

/// Rational function num/den in lowest terms with monic denominator.
/// The reduction step needs exact arithmetic, so this type is only
/// instantiated with the Rational scalar.
template <class S>
class RationalFunction {
  static_assert(is_exact_v<S>, "rational functions require the exact backend");

 public:
  RationalFunction() : num_{}, den_{Polynomial<S>::constant(S(1))} {}
  RationalFunction(Polynomial<S> num, Polynomial<S> den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), errc::division_by_zero, "rational function with zero denominator");
    reduce();
  }
  static RationalFunction from_poly(Polynomial<S> p) {
    return RationalFunction(std::move(p), Polynomial<S>::constant(S(1)));
  }
  static RationalFunction constant(S v) { return from_poly(Polynomial<S>::constant(std::move(v))); }

  const Polynomial<S>& num() const { return num_; }
  const Polynomial<S>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Largest v with f = O(1/z^v) at infinity (negative when f grows).
  int order_at_infinity() const {
    if (num_.is_zero()) return kOrderInfinity;
    return den_.degree() - num_.degree();
  }

  S operator()(const S& x) const {
    S d = den_(x);
    if (d == 0) fail(errc::pole_hit, "rational function evaluated at a pole");
    return num_(x) / d;
  }
  Complex<S> operator()(const Complex<S>& x) const {
    Complex<S> d = den_(x);
    if (d.re == 0 && d.im == 0) fail(errc::pole_hit, "rational function evaluated at a pole");
    return num_(x) / d;
  }

  RationalFunction reflected() const {
    return RationalFunction(num_.reflected(), den_.reflected());
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const Polynomial<S>& p, const RationalFunction& b) {
    return RationalFunction(p * b.num_, b.den_);
  }
  friend RationalFunction operator*(const S& s, const RationalFunction& b) {
    return RationalFunction(s * b.num_, b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    require(!b.is_zero(), errc::division_by_zero, "division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Splits f into polynomial part plus a proper remainder.
  std::pair<Polynomial<S>, RationalFunction> split() const {
    if (num_.degree() < den_.degree()) return {{}, *this};
    auto [q, r] = divmod(num_, den_);
    return {q, RationalFunction(r, den_)};
  }

  /// Residue at a simple pole p (den(p) = 0, den'(p) != 0).
  S residue_at(const S& p) const {
    require(den_(p) == 0, errc::invalid_argument, "residue requested off the pole set");
    S dp = den_.derivative()(p);
    require(dp != 0, errc::non_simple_pole, "residue at a multiple pole");
    return num_(p) / dp;
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial<S>::constant(S(1));
      return;
    }
    auto g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    S lead = den_.leading();
    num_ = num_ / lead;
    den_ = den_ / lead;
  }

  Polynomial<S> num_;
  Polynomial<S> den_;
};

/// Coefficients c_0..c_K of the expansion num/den ~ sum_j c_j / z^{j+1} at
/// infinity. Requires deg num < deg den; exact power-series long division.
template <class S>
std::vector<S> laurent_tail(const Polynomial<S>& num, const Polynomial<S>& den, int count) {
  require(!den.is_zero(), errc::division_by_zero, "laurent expansion with zero denominator");
  require(num.degree() < den.degree(), errc::invalid_argument,
          "laurent tail of an improper rational function");
  int d = den.degree();
  std::vector<S> c(std::size_t(count), S(0));
  if (num.is_zero()) return c;
  S lead = den[std::size_t(d)];
  // Matching coefficients in num = den * sum c_j z^{-j-1}: the z^{d-1-j}
  // coefficient gives num_{d-1-j} = sum_{i<=j} c_i * den_{d-(j-i)}.
  for (int j = 0; j < count; ++j) {
    int idx = d - 1 - j;
    S acc = idx >= 0 ? num[std::size_t(idx)] : S(0);
    for (int i = 0; i < j; ++i) {
      int k = d - (j - i);
      if (k >= 0) acc -= c[std::size_t(i)] * den[std::size_t(k)];
    }
    c[std::size_t(j)] = acc / lead;
  }
  return c;
}

template <class S>
std::vector<S> laurent_tail(const RationalFunction<S>& f, int count) {
  auto [p, proper] = f.split();
  require(p.is_zero(), errc::invalid_argument, "laurent tail of an improper rational function");
  return laurent_tail(proper.num(), proper.den(), count);
}

}  // namespace nikhp
