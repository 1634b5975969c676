#pragma once

#include <nikhp/nikhp.hpp>

#include <cstdint>
#include <vector>

namespace fixtures {

using nikhp::Complex;
using nikhp::Measure;
using nikhp::NikishinSystem;
using nikhp::Rational;

/// Deterministic splitmix64 stream; every randomized test derives its data
/// from an explicit seed so failures replay exactly.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) { return lo + long(next() % std::uint64_t(hi - lo + 1)); }

  /// Rational in (0, 1] with denominator up to `den`.
  Rational unit(long den = 64) {
    long q = uniform(2, den);
    long p = uniform(1, q);
    return Rational(p) / q;
  }

  /// Rational in [-bound, bound].
  Rational symmetric(long bound = 4, long den = 16) {
    return Rational(uniform(-bound * den, bound * den)) / den;
  }
};

/// Strictly increasing rational positions filling (lo, hi).
inline std::vector<Rational> spread_positions(Rng& rng, const Rational& lo, const Rational& hi,
                                              int count) {
  std::vector<Rational> xs;
  Rational step = (hi - lo) / (count + 1);
  for (int i = 1; i <= count; ++i) {
    Rational jitter = (rng.unit() - Rational(1) / 2) * step / 2;
    xs.push_back(lo + i * step + jitter);
  }
  return xs;
}

inline Measure<Rational> random_discrete(Rng& rng, const Rational& lo, const Rational& hi,
                                         int count, int sign = 1) {
  std::vector<std::pair<Rational, Rational>> atoms;
  // Weights scaled to unit-ish total mass; large masses inflate the solution
  // coefficients and with them the float-backend error amplification.
  for (const auto& x : spread_positions(rng, lo, hi, count))
    atoms.push_back({x, Rational(sign) * (rng.unit() + Rational(1) / 4) / count});
  return Measure<Rational>::discrete(std::move(atoms));
}

/// Random all-discrete system with positive generators on the monotone chain
/// [0,1], [2,3], [4,5], ... Nonnegative atoms keep the moment sums free of
/// cancellation, which the float backend needs.
inline NikishinSystem<Rational> random_system(Rng& rng, int m, int min_atoms = 8,
                                              int max_atoms = 12) {
  std::vector<Measure<Rational>> gens;
  for (int j = 0; j < m; ++j) {
    Rational lo(2 * j), hi(2 * j + 1);
    gens.push_back(random_discrete(rng, lo, hi, int(rng.uniform(min_atoms, max_atoms))));
  }
  return NikishinSystem<Rational>(std::move(gens));
}

/// Seeded off-support sample points: imaginary parts in [1/2, 3].
inline std::vector<Complex<Rational>> seeded_points(Rng& rng, int count) {
  std::vector<Complex<Rational>> pts;
  for (int i = 0; i < count; ++i) {
    Rational re = rng.symmetric(6, 8);
    Rational im = Rational(1) / 2 + rng.unit() * Rational(5) / 2;
    pts.push_back({re, im});
  }
  return pts;
}

/// The hand-solved two-measure system: sigma_1 = (delta_0 + delta_1)/2 on
/// [0,1], sigma_2 = delta_3 on [2,4]; n = 1 solves to (5/12, 1, z-3).
inline NikishinSystem<Rational> worked_system() {
  auto s1 = Measure<Rational>::discrete(
      {{Rational(0), Rational(1) / 2}, {Rational(1), Rational(1) / 2}},
      nikhp::Interval<Rational>{Rational(0), Rational(1)});
  auto s2 = Measure<Rational>::discrete({{Rational(3), Rational(1)}},
                                        nikhp::Interval<Rational>{Rational(2), Rational(4)});
  return NikishinSystem<Rational>({s1, s2});
}

/// Reference 8-atom two-measure system for the convergence tables:
/// equispaced atoms with uniform weights, sigma_1 on [0,1] with unit mass,
/// sigma_2 spread over [4,12] with mass 1/8. The wide, well-separated second
/// support keeps the fixed-margin grid errors inside the acceptance budget.
inline NikishinSystem<Rational> reference_8atom_system() {
  std::vector<std::pair<Rational, Rational>> a1, a2;
  for (int i = 0; i < 8; ++i) {
    a1.push_back({Rational(2 * i + 1) / 16, Rational(1) / 8});
    a2.push_back({Rational(4) + Rational(2 * i + 1) / 2, Rational(1) / 64});
  }
  return NikishinSystem<Rational>(
      {Measure<Rational>::discrete(std::move(a1)), Measure<Rational>::discrete(std::move(a2))});
}

/// Exact lift of a rational system to a float backend.
template <class F>
NikishinSystem<F> lift_system(const NikishinSystem<Rational>& sys) {
  std::vector<Measure<F>> gens;
  for (std::size_t j = 1; j <= sys.size(); ++j) {
    const auto& g = sys.generator(j);
    std::vector<std::pair<F, F>> atoms;
    for (const auto& a : g.atoms())
      atoms.push_back({nikhp::from_rational<F>(a.x), nikhp::from_rational<F>(a.w)});
    gens.push_back(Measure<F>::discrete(std::move(atoms)));
  }
  return NikishinSystem<F>(std::move(gens));
}

}  // namespace fixtures
