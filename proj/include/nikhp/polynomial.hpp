#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "nikhp/errors.hpp"
#include "nikhp/scalar.hpp"

namespace nikhp {

/// Dense univariate polynomial, coefficients stored low-to-high degree.
/// The zero polynomial has an empty coefficient vector; degree() reports -1
/// for it (callers must not do degree arithmetic on zero polynomials).
template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(S v) { return Polynomial(std::vector<S>{std::move(v)}); }
  static Polynomial identity() { return Polynomial(std::vector<S>{S(0), S(1)}); }
  /// (z - r0)(z - r1)...
  static Polynomial from_roots(const std::vector<S>& roots) {
    Polynomial p = constant(S(1));
    for (const S& r : roots) p = p * Polynomial(std::vector<S>{-r, S(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }
  const std::vector<S>& coeffs() const { return c_; }

  const S& operator[](std::size_t i) const {
    static const S zero(0);
    return i < c_.size() ? c_[i] : zero;
  }

  S leading() const { return c_.empty() ? S(0) : c_.back(); }

  S operator()(const S& x) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  Complex<S> operator()(const Complex<S>& x) const {
    Complex<S> acc(S(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Complex<S>(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * S(int(i));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    require(!is_zero(), errc::division_by_zero, "monic of zero polynomial");
    return *this / leading();
  }

  /// p(-z); used for measure reflection and the concomitant identity.
  Polynomial reflected() const {
    std::vector<S> d = c_;
    for (std::size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<S> r = a.c_;
    for (S& v : r) v = -v;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const S& s, const Polynomial& a) {
    std::vector<S> r = a.c_;
    for (S& v : r) v = s * v;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator/(const Polynomial& a, const S& s) {
    require(s != 0, errc::division_by_zero, "polynomial scalar division by zero");
    std::vector<S> r = a.c_;
    for (S& v : r) v = v / s;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
    require(!b.is_zero(), errc::division_by_zero, "polynomial division by zero");
    std::vector<S> q;
    int db = b.degree();
    if (a.degree() >= db) q.assign(a.degree() - db + 1, S(0));
    while (a.degree() >= db) {
      S f = a.leading() / b.leading();
      int shift = a.degree() - db;
      q[shift] = f;
      for (int i = 0; i <= db; ++i) a.c_[shift + i] -= f * b.c_[i];
      a.trim();
    }
    return {Polynomial(std::move(q)), std::move(a)};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<S> c_;
};

/// Monic gcd over the coefficient field. Exact for Rational; not meant for
/// float scalars (roundoff makes the notion ill-posed there).
template <class S>
Polynomial<S> poly_gcd(Polynomial<S> a, Polynomial<S> b) {
  static_assert(is_exact_v<S>, "polynomial gcd requires the exact backend");
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
    if (!b.is_zero()) b = b.monic();
  }
  return a.is_zero() ? a : a.monic();
}

/// Extended Euclid: g = gcd(a, b) monic, with u*a + v*b = g.
template <class S>
std::tuple<Polynomial<S>, Polynomial<S>, Polynomial<S>> poly_xgcd(Polynomial<S> a,
                                                                  Polynomial<S> b) {
  static_assert(is_exact_v<S>);
  Polynomial<S> u0 = Polynomial<S>::constant(S(1)), v0{};
  Polynomial<S> u1{}, v1 = Polynomial<S>::constant(S(1));
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    Polynomial<S> u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (a.is_zero()) return {a, u0, v0};
  S lead = a.leading();
  return {a / lead, u0 / lead, v0 / lead};
}

/// Inverse of a modulo m in the quotient ring; requires gcd(a, m) = 1.
template <class S>
Polynomial<S> poly_mod_inverse(const Polynomial<S>& a, const Polynomial<S>& m) {
  auto [g, u, v] = poly_xgcd(a, m);
  (void)v;
  require(g.degree() == 0, errc::invalid_argument, "polynomial not invertible modulo m");
  return divmod(u, m).second;
}

template <class S>
bool is_squarefree(const Polynomial<S>& p) {
  if (p.degree() <= 1) return !p.is_zero();
  return poly_gcd(p, p.derivative()).degree() == 0;
}

template <class S>
Polynomial<S> squarefree_part(const Polynomial<S>& p) {
  if (p.degree() <= 1) return p;
  auto g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return divmod(p, g).first;
}

// ---------------------------------------------------------------------------
// Sturm sequences and exact real root isolation (Rational scalars).
// ---------------------------------------------------------------------------

template <class S>
std::vector<Polynomial<S>> sturm_chain(const Polynomial<S>& p) {
  static_assert(is_exact_v<S>);
  std::vector<Polynomial<S>> chain;
  chain.push_back(p);
  if (p.degree() < 1) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

namespace detail {

template <class S>
int sign_variations(const std::vector<Polynomial<S>>& chain, const S& x) {
  int v = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sign_of(q(x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
  }
  return v;
}

template <class S>
int sign_variations_at_infinity(const std::vector<Polynomial<S>>& chain, bool plus) {
  int v = 0, prev = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sign_of(q.leading());
    if (!plus && q.degree() % 2 == 1) s = -s;
    if (s != 0) {
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
  }
  return v;
}

}  // namespace detail

/// Number of distinct real roots of p in the open interval (lo, hi).
/// Exact; endpoints that happen to be roots are excluded.
template <class S>
int count_real_roots(const Polynomial<S>& p, const S& lo, const S& hi) {
  static_assert(is_exact_v<S>);
  require(!p.is_zero(), errc::invalid_argument, "root count of zero polynomial");
  if (!(lo < hi)) return 0;
  Polynomial<S> q = squarefree_part(p);
  // Shrink away endpoint roots so the Sturm count applies cleanly.
  while (q(lo) == 0) q = divmod(q, Polynomial<S>({-lo, S(1)})).first;
  while (q(hi) == 0) q = divmod(q, Polynomial<S>({-hi, S(1)})).first;
  if (q.degree() < 1) return 0;
  auto chain = sturm_chain(q);
  return detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
}

template <class S>
int count_all_real_roots(const Polynomial<S>& p) {
  static_assert(is_exact_v<S>);
  Polynomial<S> q = squarefree_part(p);
  if (q.degree() < 1) return 0;
  auto chain = sturm_chain(q);
  return detail::sign_variations_at_infinity(chain, false) -
         detail::sign_variations_at_infinity(chain, true);
}

/// Cauchy bound: every root lies in (-B, B).
template <class S>
S root_bound(const Polynomial<S>& p) {
  S b(0);
  S lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) b = std::max(b, abs(p[i]) / lead);
  return b + 1;
}

template <class S>
struct RootInterval {
  S lo, hi;  // lo == hi means the root is exactly lo
  bool exact() const { return lo == hi; }
  S midpoint() const { return (lo + hi) / 2; }
};

namespace detail {

/// Recursive bisection over intervals with q nonzero at both endpoints.
/// Returns the midpoint if the bisection lands exactly on a root; the caller
/// divides that root out and restarts.
template <class S>
std::optional<S> isolate_rec(const Polynomial<S>& q, const std::vector<Polynomial<S>>& chain,
                             const S& lo, const S& hi, int count,
                             std::vector<RootInterval<S>>& out) {
  if (count == 0) return std::nullopt;
  if (count == 1) {
    out.push_back({lo, hi});
    return std::nullopt;
  }
  S mid = (lo + hi) / 2;
  if (q(mid) == 0) return mid;
  int left = sign_variations(chain, lo) - sign_variations(chain, mid);
  if (auto hit = isolate_rec(q, chain, lo, mid, left, out)) return hit;
  return isolate_rec(q, chain, mid, hi, count - left, out);
}

}  // namespace detail

/// Disjoint rational intervals, each containing exactly one distinct real
/// root of p inside (lo, hi); sorted ascending. Roots hit exactly by a
/// bisection point come out as degenerate [r, r] intervals.
template <class S>
std::vector<RootInterval<S>> isolate_real_roots(const Polynomial<S>& p, const S& lo, const S& hi) {
  static_assert(is_exact_v<S>);
  Polynomial<S> q = squarefree_part(p);
  while (!q.is_zero() && q(lo) == 0) q = divmod(q, Polynomial<S>({-lo, S(1)})).first;
  while (!q.is_zero() && q(hi) == 0) q = divmod(q, Polynomial<S>({-hi, S(1)})).first;
  std::vector<RootInterval<S>> out;
  for (;;) {
    if (q.degree() < 1) break;
    std::vector<RootInterval<S>> batch;
    auto chain = sturm_chain(q);
    int total = detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
    auto hit = detail::isolate_rec(q, chain, lo, hi, total, batch);
    if (!hit) {
      out.insert(out.end(), batch.begin(), batch.end());
      break;
    }
    out.push_back({*hit, *hit});
    q = divmod(q, Polynomial<S>({-*hit, S(1)})).first;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

template <class S>
std::vector<RootInterval<S>> isolate_all_real_roots(const Polynomial<S>& p) {
  S b = root_bound(p);
  return isolate_real_roots(p, -b, b);
}

/// Bisect an isolating interval until its width is at most `width`.
template <class S>
RootInterval<S> refine_root(const Polynomial<S>& p, RootInterval<S> iv, const S& width) {
  static_assert(is_exact_v<S>);
  if (iv.exact()) return iv;
  Polynomial<S> q = squarefree_part(p);
  // Endpoints may coincide with other roots of p; shave those off so the
  // bracket signs are well defined.
  while (q(iv.lo) == 0) q = divmod(q, Polynomial<S>({-iv.lo, S(1)})).first;
  while (q(iv.hi) == 0) q = divmod(q, Polynomial<S>({-iv.hi, S(1)})).first;
  int slo = sign_of(q(iv.lo));
  while (iv.hi - iv.lo > width) {
    S mid = (iv.lo + iv.hi) / 2;
    int sm = sign_of(q(mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

/// Refine the isolating boxes of two root sets until all boxes are pairwise
/// disjoint, then report whether the roots of `inner` strictly interlace the
/// roots of `outer` (outer must have exactly one more root than inner).
template <class S>
bool roots_strictly_interlace(const Polynomial<S>& outer, const Polynomial<S>& inner, const S& lo,
                              const S& hi) {
  auto a = isolate_real_roots(outer, lo, hi);
  auto b = isolate_real_roots(inner, lo, hi);
  if (a.size() != b.size() + 1) return false;
  bool again = true;
  auto overlaps = [](const RootInterval<S>& x, const RootInterval<S>& y) {
    return !(x.hi < y.lo || y.hi < x.lo);
  };
  while (again) {
    again = false;
    for (auto& x : a)
      for (auto& y : b)
        if (overlaps(x, y)) {
          if (x.exact() && y.exact()) return false;  // shared root
          S w = (x.hi - x.lo + y.hi - y.lo) / 4;
          if (w == 0) return false;
          x = refine_root(outer, x, w);
          y = refine_root(inner, y, w);
          again = true;
        }
  }
  // Merge and check the alternation pattern outer, inner, outer, ...
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(a[i].hi < b[i].lo && b[i].hi < a[i + 1].lo)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Float-backend root refinement and complex roots.
// ---------------------------------------------------------------------------

template <class F>
Polynomial<Rational> lift_to_rational(const Polynomial<F>& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(rational_from_float(v));
  return Polynomial<Rational>(std::move(c));
}

template <class S>
Polynomial<S> poly_from_rational(const Polynomial<Rational>& p) {
  std::vector<S> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(from_rational<S>(v));
  return Polynomial<S>(std::move(c));
}

/// Newton polish within a sign-change bracket; falls back to bisection when a
/// step leaves the bracket. Converges quadratically for the simple roots the
/// callers feed it.
template <class F>
F polish_root(const Polynomial<F>& p, F lo, F hi, int max_iter = 2000) {
  static_assert(!is_exact_v<F>);
  const Polynomial<F> dp = p.derivative();
  F flo = p(lo);
  F x = (lo + hi) / 2;
  F tol = precision_epsilon<F>(8) * (abs(lo) + abs(hi) + 1);
  for (int i = 0; i < max_iter; ++i) {
    if (hi - lo <= tol) return (lo + hi) / 2;
    F fx = p(x);
    if (fx == 0) return x;
    if (sign_of(fx) == sign_of(flo))
      lo = x;
    else
      hi = x;
    F d = dp(x);
    F nx = d != 0 ? x - fx / d : (lo + hi) / 2;
    if (!(nx > lo && nx < hi)) nx = (lo + hi) / 2;
    if (abs(nx - x) <= tol) return nx;
    x = nx;
  }
  fail(errc::root_precision_loss, "Newton polish did not converge");
}

/// All complex roots of a float polynomial via the Durand-Kerner iteration.
template <class F>
std::vector<Complex<F>> complex_roots(const Polynomial<F>& p, int max_iter = 500) {
  static_assert(!is_exact_v<F>);
  int n = p.degree();
  std::vector<Complex<F>> r;
  if (n <= 0) return r;
  Polynomial<F> q = p.monic();
  F bound = root_bound(q);
  // Non-real, non-symmetric starting points on a circle.
  Complex<F> seed(F("0.4"), F("0.9"));
  Complex<F> w(F(1));
  for (int i = 0; i < n; ++i) {
    w = w * seed;
    r.push_back(Complex<F>(bound / 2) * w + Complex<F>(F(1) / 128, F(1) / 256));
  }
  F tol = precision_epsilon<F>(16) * (bound + 1);
  for (int it = 0; it < max_iter; ++it) {
    F worst(0);
    for (int i = 0; i < n; ++i) {
      Complex<F> num = q(r[i]);
      Complex<F> den(F(1));
      for (int j = 0; j < n; ++j)
        if (j != i) den = den * (r[i] - r[j]);
      if (den.re == 0 && den.im == 0) den = Complex<F>(tol);
      Complex<F> delta = num / den;
      r[i] = r[i] - delta;
      worst = std::max(worst, abs1(delta));
    }
    if (worst <= tol) return r;
  }
  fail(errc::root_precision_loss, "Durand-Kerner did not converge");
}

}  // namespace nikhp
