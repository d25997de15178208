#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "privrand/complex_matrix.hpp"
#include "privrand/density_operator.hpp"
#include "privrand/layout.hpp"

namespace privrand {

// Counter-based splitmix64 stream: stream(seed, k) yields an independent,
// reproducible sequence for every k, regardless of evaluation order or
// thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // uniform in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  double gaussian() {
    // Box-Muller; the log argument is kept away from zero
    const double u1 = std::max(next_double(), 0x1.0p-53);
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  cplx complex_gaussian() { return cplx(gaussian(), gaussian()); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Haar-adjacent random unitary: complex Gaussian matrix orthonormalized by
// modified Gram-Schmidt.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t prev = 0; prev < col; ++prev) {
      cplx overlap = 0.0;
      for (std::size_t k = 0; k < n; ++k) overlap += std::conj(g(k, prev)) * g(k, col);
      for (std::size_t k = 0; k < n; ++k) g(k, col) -= overlap * g(k, prev);
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm += std::norm(g(k, col));
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < n; ++k) g(k, col) /= norm;
  }
  return g;
}

inline std::vector<cplx> random_pure_state(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  double norm = 0.0;
  for (auto& z : v) {
    z = rng.complex_gaussian();
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto& z : v) z /= norm;
  return v;
}

// Wishart-style random state: G G^dagger normalized to unit trace.
inline DensityOperator random_state(const SubsystemLayout& layout, Rng& rng) {
  const std::size_t n = layout.total_dim();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real(), 0.0);
  // clean up rounding asymmetry
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = avg;
      rho(j, i) = std::conj(avg);
    }
  return DensityOperator(std::move(rho), layout);
}

// flat Dirichlet over the (k-1)-simplex via normalized exponentials
inline std::vector<double> random_simplex(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(std::max(rng.next_double(), 0x1.0p-53));
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

// Mixture of random product pure states across the bipartition given by the
// first `split` registers vs the rest; separable by construction, hence PPT.
inline DensityOperator random_separable_state(const SubsystemLayout& layout, std::size_t split,
                                              std::size_t terms, Rng& rng) {
  std::size_t da = 1, db = 1;
  for (std::size_t i = 0; i < layout.size(); ++i)
    (i < split ? da : db) *= layout.at(i).dim;
  const std::size_t n = da * db;
  const std::vector<double> w = random_simplex(terms, rng);
  ComplexMatrix rho(n, n);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto va = random_pure_state(da, rng);
    const auto vb = random_pure_state(db, rng);
    for (std::size_t ia = 0; ia < da; ++ia)
      for (std::size_t ib = 0; ib < db; ++ib)
        for (std::size_t ja = 0; ja < da; ++ja)
          for (std::size_t jb = 0; jb < db; ++jb)
            rho(ia * db + ib, ja * db + jb) +=
                w[t] * va[ia] * vb[ib] * std::conj(va[ja] * vb[jb]);
  }
  return DensityOperator(std::move(rho), layout);
}

}  // namespace privrand
