#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace nikhp;
using fixtures::Rng;
using P = Polynomial<Rational>;

namespace {

P random_poly(Rng& rng, int degree) {
  std::vector<Rational> c;
  for (int i = 0; i < degree; ++i) c.push_back(rng.symmetric());
  c.push_back(rng.symmetric() + Rational(5));  // keep the degree honest
  return P(std::move(c));
}

}  // namespace

TEST_CASE("euclidean division reconstructs the dividend") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    P a = random_poly(rng, int(rng.uniform(0, 6)));
    P b = random_poly(rng, int(rng.uniform(1, 4)));
    auto [q, r] = divmod(a, b);
    REQUIRE(q * b + r == a);
    REQUIRE(r.degree() < b.degree());
  }
}

TEST_CASE("gcd and extended gcd agree on constructed common factors") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    P g = random_poly(rng, 2).monic();
    P a = g * random_poly(rng, 2);
    P b = g * random_poly(rng, 3);
    auto d = poly_gcd(a, b);
    REQUIRE(divmod(d, g).second.is_zero());  // g divides the gcd
    auto [gx, u, v] = poly_xgcd(a, b);
    REQUIRE(u * a + v * b == gx);
    REQUIRE(gx == d);
  }
}

TEST_CASE("modular inverse inverts") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    P m = P::from_roots({Rational(1), Rational(2), Rational(3)});
    P a = random_poly(rng, 2);
    if (a(Rational(1)) == 0 || a(Rational(2)) == 0 || a(Rational(3)) == 0) continue;
    P inv = poly_mod_inverse(a, m);
    REQUIRE(divmod(a * inv, m).second == P::constant(Rational(1)));
  }
}

TEST_CASE("sturm counts match known root patterns") {
  // (z-1)(z-2)(z-5) has one root in (0,3), two in (0,4), three overall.
  P p = P::from_roots({Rational(1), Rational(2), Rational(5)});
  REQUIRE(count_real_roots(p, Rational(0), Rational(3)) == 2);
  REQUIRE(count_real_roots(p, Rational(3), Rational(6)) == 1);
  REQUIRE(count_all_real_roots(p) == 3);
  // endpoint roots are excluded from open windows
  REQUIRE(count_real_roots(p, Rational(1), Rational(5)) == 1);
  // z^2 + 1 has no real roots
  REQUIRE(count_all_real_roots(P({Rational(1), Rational(0), Rational(1)})) == 0);
  // multiple roots count once
  P sq = P::from_roots({Rational(2)}) * P::from_roots({Rational(2), Rational(7)});
  REQUIRE(count_all_real_roots(sq) == 2);
  REQUIRE_FALSE(is_squarefree(sq));
}

TEST_CASE("isolation separates clustered roots and refinement brackets them") {
  std::vector<Rational> roots{Rational(1) / 3, Rational(17) / 48, Rational(2), Rational(39) / 16};
  P p = P::from_roots(roots);
  auto boxes = isolate_all_real_roots(p);
  REQUIRE(boxes.size() == roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto tight = refine_root(p, boxes[i], Rational(1) / 1000000);
    REQUIRE(tight.lo <= roots[i]);
    REQUIRE(roots[i] <= tight.hi);
  }
}

TEST_CASE("interlacing detector") {
  P outer = P::from_roots({Rational(1), Rational(3), Rational(5)});
  P good = P::from_roots({Rational(2), Rational(4)});
  P bad = P::from_roots({Rational(2), Rational(5) / 2});  // both in (1,3)
  REQUIRE(roots_strictly_interlace(outer, good, Rational(0), Rational(6)));
  REQUIRE_FALSE(roots_strictly_interlace(outer, bad, Rational(0), Rational(6)));
}

TEST_CASE("laurent tail matches the geometric expansion of 1/(z-a)") {
  // 1/(z-a) = sum a^j / z^{j+1}
  Rational a(3);
  auto c = laurent_tail(P::constant(Rational(1)), P({-a, Rational(1)}), 8);
  Rational want(1);
  for (int j = 0; j < 8; ++j) {
    REQUIRE(c[std::size_t(j)] == want);
    want *= a;
  }
}

TEST_CASE("laurent tail of a random proper function attenuates the defining identity") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    P den = P::from_roots({rng.symmetric(), rng.symmetric() + Rational(10)});
    P num = random_poly(rng, 1);
    int k = 12;
    auto c = laurent_tail(num, den, k);
    // Multiply back: num - den * (c_0/z + ... ) must vanish through z^{-k}.
    // Work with the polynomial identity num*z^k - den*sum c_j z^{k-j-1}.
    std::vector<Rational> shifted(std::size_t(k) + std::size_t(num.coeffs().size()), Rational(0));
    for (std::size_t i = 0; i < num.coeffs().size(); ++i) shifted[i + std::size_t(k)] = num[i];
    P lhs{std::vector<Rational>(shifted)};
    P rhs{};
    for (int j = 0; j < k; ++j) {
      std::vector<Rational> t(std::size_t(k - j - 1) + 1, Rational(0));
      t.back() = c[std::size_t(j)];
      rhs = rhs + P(std::move(t)) * den;
    }
    P diff = lhs - rhs;
    REQUIRE(diff.degree() < den.degree());  // only sub-threshold terms remain
  }
}

TEST_CASE("rational function reduction, orders, residues") {
  using RF = RationalFunction<Rational>;
  RF f(P({Rational(2), Rational(2)}), P::from_roots({Rational(-1), Rational(4)}));
  // (2z+2)/((z+1)(z-4)) reduces to 2/(z-4)
  REQUIRE(f.num() == P::constant(Rational(2)));
  REQUIRE(f.order_at_infinity() == 1);
  REQUIRE(f.residue_at(Rational(4)) == 2);
  REQUIRE((f - f).is_zero());
  REQUIRE((f - f).order_at_infinity() == kOrderInfinity);
  auto [poly, proper] = (RF::from_poly(P::identity()) * f).split();
  REQUIRE(poly == P::constant(Rational(2)));
  REQUIRE(proper.order_at_infinity() == 1);
}

TEST_CASE("float root polish locates roots to high precision") {
  using F = Float256;
  Polynomial<F> p({F(-2), F(0), F(1)});  // z^2 - 2
  auto roots = real_roots(p, Interval<F>{F(0), F(2)});
  REQUIRE(roots.size() == 1);
  REQUIRE(abs(roots[0] - sqrt(F(2))) < precision_epsilon<F>(16));
}

TEST_CASE("complex roots of a real cubic") {
  using F = Float256;
  // (z-1)(z^2+4): roots 1, +-2i
  Polynomial<F> p({F(-4), F(4), F(-1), F(1)});
  auto roots = complex_roots(p);
  REQUIRE(roots.size() == 3);
  int real_count = 0, imag_count = 0;
  for (const auto& r : roots) {
    if (abs(r.im) < F(1) / 1000000) {
      ++real_count;
      REQUIRE(abs(r.re - 1) < F(1) / 1000000);
    } else {
      ++imag_count;
      REQUIRE(abs(abs(r.im) - 2) < F(1) / 1000000);
    }
  }
  REQUIRE(real_count == 1);
  REQUIRE(imag_count == 2);
}
