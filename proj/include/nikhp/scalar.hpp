#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <type_traits>

#include "nikhp/errors.hpp"

namespace nikhp {

namespace mp = boost::multiprecision;

/// Exact arbitrary-precision rational scalar (GMP mpq).
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

// 78 decimal digits give >= 256 mantissa bits, 155 give >= 512, 310 >= 1024.
using Float256 = mp::number<mp::mpfr_float_backend<78>, mp::et_off>;
using Float512 = mp::number<mp::mpfr_float_backend<155>, mp::et_off>;
using Float1024 = mp::number<mp::mpfr_float_backend<310>, mp::et_off>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  /// Unused for the exact backend; kept so tolerance formulas compile.
  static constexpr unsigned precision_bits = 0;
  static const char* name() { return "rational"; }
};

template <>
struct scalar_traits<Float256> {
  static constexpr bool is_exact = false;
  static constexpr unsigned precision_bits = 256;
  static const char* name() { return "f256"; }
};

template <>
struct scalar_traits<Float512> {
  static constexpr bool is_exact = false;
  static constexpr unsigned precision_bits = 512;
  static const char* name() { return "f512"; }
};

template <>
struct scalar_traits<Float1024> {
  static constexpr bool is_exact = false;
  static constexpr unsigned precision_bits = 1024;
  static const char* name() { return "f1024"; }
};

/// Double-width companion type, used as guard precision inside the float
/// linear solves (the elimination loses structure that the problem itself
/// does not; working wide and rounding back keeps the backend contract).
template <class S>
struct wide_scalar;
template <>
struct wide_scalar<Float256> {
  using type = Float512;
};
template <>
struct wide_scalar<Float512> {
  using type = Float1024;
};
template <class S>
using wide_scalar_t = typename wide_scalar<S>::type;

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::is_exact;

/// 2^(-precision_bits + slack); the standard shape of the float-backend
/// tolerances used throughout.
template <class S>
S precision_epsilon(int slack_bits) {
  static_assert(!is_exact_v<S>);
  return ldexp(S(1), -int(scalar_traits<S>::precision_bits) + slack_bits);
}

/// Residual acceptance: literal zero on the exact backend, 2^(-p+slack)
/// on floats.
template <class S>
bool residual_within(const S& r, int slack_bits) {
  if constexpr (is_exact_v<S>) {
    (void)slack_bits;
    return r == 0;
  } else {
    return abs(r) < precision_epsilon<S>(slack_bits);
  }
}

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }
template <class B>
double to_double(const mp::number<B, mp::et_off>& x) {
  return x.template convert_to<double>();
}

/// Exact conversion of a binary float to a rational (mantissa * 2^exp).
template <class F>
Rational rational_from_float(const F& x) {
  static_assert(!is_exact_v<F>);
  if (x == 0) return Rational(0);
  mp::mpz_int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.backend().data(), x.backend().data());
  Rational r(mant.convert_to<mp::mpq_rational>().convert_to<Rational>());
  Rational two(2);
  // r * 2^e without building huge intermediate exponents one bit at a time.
  mp::mpz_int p2 = mp::pow(mp::mpz_int(2), unsigned(e < 0 ? -e : e));
  Rational f(p2.convert_to<mp::mpq_rational>().convert_to<Rational>());
  return e < 0 ? r / f : r * f;
}

inline Rational to_scalar_exact(const Rational& x, const Rational*) { return x; }
template <class F>
F to_scalar_exact(const Rational& x, const F*) {
  return F(x.backend().data());  // mpq -> mpfr, correctly rounded
}

/// Convert an exact rational into the scalar type S (identity for Rational).
template <class S>
S from_rational(const Rational& x) {
  return to_scalar_exact(x, static_cast<const S*>(nullptr));
}

template <class S>
int sign_of(const S& x) {
  if (x > 0) return 1;
  if (x < 0) return -1;
  return 0;
}

/// Minimal complex type over an arbitrary scalar. std::complex is only
/// specified for builtin floating point, so we roll our own.
template <class S>
struct Complex {
  S re{};
  S im{};

  Complex() = default;
  Complex(S r) : re(std::move(r)) {}
  Complex(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const S& a, const Complex& b) { return {a * b.re, a * b.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    S d = b.re * b.re + b.im * b.im;
    if (d == 0) fail(errc::division_by_zero, "complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// l1 magnitude |re|+|im|: exactly zero iff the value is zero, and within a
/// factor sqrt(2) of the euclidean modulus, so it is the residual metric used
/// by both backends.
template <class S>
S abs1(const Complex<S>& z) {
  return abs(z.re) + abs(z.im);
}

template <class S>
S abs_sq(const Complex<S>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class S>
Complex<double> complex_to_double(const Complex<S>& z) {
  return {to_double(z.re), to_double(z.im)};
}

}  // namespace nikhp
