#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "nikhp/measures.hpp"

namespace nikhp {

/// Polynomial coefficients (ell_0, ..., ell_m) of a linear form
/// L_j = ell_j + sum_{k>j} ell_k s^_{j+1,k}.
template <class S>
struct LinearFormCoeffs {
  std::vector<Polynomial<S>> ell;

  void validate(std::size_t m) const {
    require(ell.size() == m + 1, errc::invalid_argument, "need m+1 coefficient polynomials");
    bool nonzero = false;
    for (const auto& p : ell) nonzero = nonzero || !p.is_zero();
    require(nonzero, errc::invalid_argument, "all coefficient polynomials vanish");
  }
};

/// A validated chain of generating measures sigma_1..sigma_m together with a
/// write-once cache of the product measures s_{j,k} (both orientations) and
/// their moment sequences. Indices are 1-based to match the usual notation.
template <class S>
class NikishinSystem {
 public:
  explicit NikishinSystem(std::vector<Measure<S>> generators)
      : gen_(std::make_shared<std::vector<Measure<S>>>(std::move(generators))),
        state_(std::make_shared<CacheState>()) {
    require(!gen_->empty(), errc::invalid_argument, "a system needs at least one measure");
    for (const auto& g : *gen_) {
      require(!g.empty(), errc::invalid_argument, "empty generating measure");
      hulls_.push_back(g.support_hull());
    }
    validate_chain();
  }

  std::size_t size() const { return gen_->size(); }

  const Measure<S>& generator(std::size_t j) const {
    require(1 <= j && j <= size(), errc::invalid_argument, "generator index out of range");
    return (*gen_)[j - 1];
  }

  const Interval<S>& interval(std::size_t j) const {
    require(1 <= j && j <= size(), errc::invalid_argument, "interval index out of range");
    return hulls_[j - 1];
  }

  /// Hull of the union of all generator supports.
  Interval<S> overall_hull() const {
    Interval<S> h = hulls_.front();
    for (const auto& iv : hulls_) {
      h.lo = std::min(h.lo, iv.lo);
      h.hi = std::max(h.hi, iv.hi);
    }
    return h;
  }

  /// Smallest atom count among the generators, or SIZE_MAX if any generator
  /// is continuous. Drives the discrete-degeneracy guard in the solver.
  std::size_t min_atom_count() const {
    std::size_t n = std::size_t(-1);
    for (const auto& g : *gen_)
      if (g.is_discrete_kind()) n = std::min(n, g.atom_count());
      else
        return std::size_t(-1);
    return n;
  }

  bool all_discrete() const {
    for (const auto& g : *gen_)
      if (!g.is_discrete_kind()) return false;
    return true;
  }

  NikishinSystem reversed() const {
    std::vector<Measure<S>> rev(gen_->rbegin(), gen_->rend());
    return NikishinSystem(std::move(rev));
  }

  /// s_{j,k}: direct products for j <= k, reversed for j >= k. Cached.
  std::shared_ptr<const Measure<S>> product_measure(std::size_t j, std::size_t k) const {
    require(1 <= j && j <= size() && 1 <= k && k <= size(), errc::invalid_argument,
            "product index out of range");
    std::lock_guard<std::mutex> lock(state_->mutex);
    return product_locked(j, k);
  }

  /// Moments c_0..c_{count-1} of s_{j,k}; the cached prefix only grows.
  std::vector<S> moments(std::size_t j, std::size_t k, std::size_t count) const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto measure = product_locked(j, k);
    auto& cached = state_->moments[{j, k}];
    while (cached.size() < count) cached.push_back(measure->moment(int(cached.size())));
    return std::vector<S>(cached.begin(), cached.begin() + std::ptrdiff_t(count));
  }

  Complex<S> s_hat(std::size_t j, std::size_t k, const Complex<S>& z) const {
    return product_measure(j, k)->cauchy(z);
  }

  /// Exact transform of s_{j,k}; rational backend with discrete generators.
  RationalFunction<Rational> s_hat_fun(std::size_t j, std::size_t k) const {
    static_assert(is_exact_v<S>);
    return product_measure(j, k)->transform();
  }

  /// Max residual over `points` of the fundamental identity
  ///   0 = (-1)^j s^_{m,j+1} + sum_{k=j+1}^{m-1} (-1)^k s^_{m,k+1} s^_{j+1,k}
  ///       + (-1)^m s^_{j+1,m},
  /// which must vanish off Delta_{j+1} and Delta_m.
  S check_fundamental_identity(std::size_t j, const std::vector<Complex<S>>& points) const {
    const std::size_t m = size();
    require(j + 2 <= m, errc::invalid_argument, "level j must be at most m-2");
    S worst(0);
    for (const auto& z : points) {
      Complex<S> acc = parity(j) * s_hat(m, j + 1, z);
      for (std::size_t k = j + 1; k + 1 <= m; ++k)
        acc = acc + parity(k) * (s_hat(m, k + 1, z) * s_hat(j + 1, k, z));
      acc = acc + parity(m) * s_hat(j + 1, m, z);
      worst = std::max(worst, abs1(acc));
    }
    return worst;
  }

  /// L_j(z) = ell_j(z) + sum_{k=j+1}^m ell_k(z) s^_{j+1,k}(z); L_m = ell_m.
  Complex<S> linear_form_eval(const LinearFormCoeffs<S>& coeffs, std::size_t j,
                              const Complex<S>& z) const {
    const std::size_t m = size();
    coeffs.validate(m);
    require(j <= m, errc::invalid_argument, "form level out of range");
    Complex<S> acc = coeffs.ell[j](z);
    for (std::size_t k = j + 1; k <= m; ++k)
      acc = acc + coeffs.ell[k](z) * s_hat(j + 1, k, z);
    return acc;
  }

  /// Max residual over `points` of the reduction identity
  ///   L_j + sum_{k=j+1}^r (-1)^{k-j} s^_{k,j+1} L_k
  ///     = ell_j + (-1)^{r-j} sum_{k=r+1}^m ell_k <s_{r+1,k}, s_{r,j+1}>^.
  S check_reduction_identity(const LinearFormCoeffs<S>& coeffs, std::size_t j, std::size_t r,
                             const std::vector<Complex<S>>& points) const {
    const std::size_t m = size();
    coeffs.validate(m);
    require(j + 2 <= m, errc::invalid_argument, "level j must be at most m-2");
    require(j + 1 <= r && r + 1 <= m, errc::invalid_argument, "need j+1 <= r <= m-1");
    std::vector<Measure<S>> crosses;  // <s_{r+1,k}, s_{r,j+1}>, k = r+1..m
    for (std::size_t k = r + 1; k <= m; ++k)
      crosses.push_back(product(*product_measure(r + 1, k), *product_measure(r, j + 1)));
    S worst(0);
    for (const auto& z : points) {
      Complex<S> lhs = linear_form_eval(coeffs, j, z);
      for (std::size_t k = j + 1; k <= r; ++k)
        lhs = lhs + parity(k - j) * (s_hat(k, j + 1, z) * linear_form_eval(coeffs, k, z));
      Complex<S> rhs = coeffs.ell[j](z);
      for (std::size_t k = r + 1; k <= m; ++k)
        rhs = rhs + parity(r - j) * (coeffs.ell[k](z) * crosses[k - r - 1].cauchy(z));
      worst = std::max(worst, abs1(lhs - rhs));
    }
    return worst;
  }

  /// Snapshot of the cached products, for reproducible-sweep export.
  std::vector<std::tuple<std::size_t, std::size_t, std::shared_ptr<const Measure<S>>,
                         std::vector<S>>>
  cache_snapshot() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    std::vector<std::tuple<std::size_t, std::size_t, std::shared_ptr<const Measure<S>>,
                           std::vector<S>>>
        out;
    for (const auto& [key, measure] : state_->products) {
      auto it = state_->moments.find(key);
      out.push_back({key.first, key.second, measure,
                     it == state_->moments.end() ? std::vector<S>{} : it->second});
    }
    return out;
  }

  /// Restore a cache entry (idempotent; first write wins).
  void cache_restore(std::size_t j, std::size_t k, Measure<S> measure,
                     std::vector<S> moment_prefix) const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto key = std::make_pair(j, k);
    if (!state_->products.count(key))
      state_->products[key] = std::make_shared<const Measure<S>>(std::move(measure));
    auto& cached = state_->moments[key];
    if (cached.size() < moment_prefix.size()) cached = std::move(moment_prefix);
  }

 private:
  static Complex<S> parity(std::size_t k) { return Complex<S>(S(k % 2 == 0 ? 1 : -1)); }

  std::shared_ptr<const Measure<S>> product_locked(std::size_t j, std::size_t k) const {
    auto key = std::make_pair(j, k);
    auto it = state_->products.find(key);
    if (it != state_->products.end()) return it->second;
    std::shared_ptr<const Measure<S>> result;
    if (j == k) {
      result = std::make_shared<const Measure<S>>((*gen_)[j - 1]);
    } else {
      std::size_t next = j < k ? j + 1 : j - 1;
      auto inner = product_locked(next, k);
      result = std::make_shared<const Measure<S>>(product((*gen_)[j - 1], *inner));
    }
    state_->products[key] = result;
    return result;
  }

  void validate_chain() {
    // Continuous products nest quadratures one level per measure; cap the
    // chain length so the recursion depth stays sane.
    if (!all_discrete())
      require(gen_->size() <= 6, errc::invalid_argument,
              "continuous chains are limited to six measures");
    for (std::size_t i = 0; i + 1 < gen_->size(); ++i) {
      const auto& a = hulls_[i];
      const auto& b = hulls_[i + 1];
      if (disjoint(a, b)) continue;
      require(touching(a, b), errc::interval_overlap,
              "consecutive supports intersect in more than a point");
      const auto& ga = (*gen_)[i];
      const auto& gb = (*gen_)[i + 1];
      require(ga.is_discrete_kind() && gb.is_discrete_kind(), errc::interval_overlap,
              "touching intervals are only supported for discrete neighbors");
      S x = a.hi == b.lo ? a.hi : b.hi;
      require(!ga.on_support(x) && !gb.on_support(x), errc::atom_at_junction,
              "shared endpoint carries mass");
    }
  }

  std::shared_ptr<std::vector<Measure<S>>> gen_;
  std::vector<Interval<S>> hulls_;

  struct CacheState {
    mutable std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Measure<S>>> products;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<S>> moments;
  };
  std::shared_ptr<CacheState> state_;
};

/// Exact embedding of a system into a wider scalar (fresh cache).
template <class W, class S>
NikishinSystem<W> widen_system(const NikishinSystem<S>& sys) {
  std::vector<Measure<W>> gens;
  for (std::size_t j = 1; j <= sys.size(); ++j) gens.push_back(widen_measure<W>(sys.generator(j)));
  return NikishinSystem<W>(std::move(gens));
}

}  // namespace nikhp
