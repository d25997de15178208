#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privrand/densop.hpp"
#include "privrand/density_operator.hpp"
#include "privrand/eig.hpp"
#include "privrand/tolerances.hpp"

// All entropies and divergences are in bits (base-2 logarithms).
namespace privrand {

inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

// eta(x) = -x log2 x, eta(0) = 0
inline double eta(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("eta: argument out of [0,1]");
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: argument out of [0,1]");
  return eta(p) + eta(1.0 - p);
}

// Shannon entropy of a (sub)normalized distribution; entries clamped to
// [0,1] with the log floor applied near zero.
inline double shannon_bits(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    const double v = std::clamp(x, 0.0, 1.0);
    if (v > kLogFloor) s -= v * std::log2(v);
  }
  return s;
}

inline double entropy_of_spectrum(std::span<const double> eigenvalues) {
  return shannon_bits(eigenvalues);
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  Spectrum s = eig_values(rho.matrix());
  return entropy_of_spectrum(s.eigenvalues);
}

// S of a Hermitian matrix treated as a spectrum holder; negative eigenvalues
// are clamped to zero (used only on partially transposed states, where PPT
// holds whenever the result is meant to be an entropy).
inline double von_neumann_entropy(const ComplexMatrix& m) {
  Spectrum s = eig_values(m);
  return entropy_of_spectrum(s.eigenvalues);
}

// D(rho || sigma) = Tr(rho log rho - rho log sigma); +inf when rho has
// weight above kSupportWeightTol on a sigma eigenvector with eigenvalue
// below kSupportEigTol.
inline double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || !rho.square() || !sigma.square())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  const std::size_t n = rho.rows();

  Spectrum sr = eig_values(rho);
  double term1 = 0.0;  // Tr rho log rho
  for (double v : sr.eigenvalues) {
    const double x = std::clamp(v, 0.0, 1.0);
    if (x > kLogFloor) term1 += x * std::log2(x);
  }

  EigResult es = eig_hermitian_full(sigma, true);
  double term2 = 0.0;  // Tr rho log sigma
  for (std::size_t k = 0; k < n; ++k) {
    // weight of rho on sigma's k-th eigenvector
    cplx w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx rv = 0.0;
      for (std::size_t j = 0; j < n; ++j) rv += rho(i, j) * es.vectors(j, k);
      w += std::conj(es.vectors(i, k)) * rv;
    }
    const double weight = std::max(w.real(), 0.0);
    const double q = es.values[k];
    if (q <= kSupportEigTol) {
      if (weight > kSupportWeightTol) return kInfiniteDivergence;
      continue;
    }
    term2 += weight * std::log2(std::max(q, kLogFloor));
  }
  return term1 - term2;
}

inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

// D(X || I/dim) for Hermitian X of unit trace; log dim - S(X) by the
// spectral route, shared by every bound evaluator.
inline double relative_entropy_to_maximally_mixed(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("relative_entropy_to_maximally_mixed");
  return std::log2(static_cast<double>(m.rows())) - von_neumann_entropy(m);
}

// Kullback-Leibler divergence between distributions, +inf on support
// violation.
inline double kl_divergence_bits(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = std::clamp(p[i], 0.0, 1.0);
    if (pi <= kLogFloor) continue;
    if (q[i] <= kSupportEigTol) return kInfiniteDivergence;
    s += pi * std::log2(pi / q[i]);
  }
  return s;
}

namespace detail {

inline std::vector<std::string> complement_labels(const SubsystemLayout& layout,
                                                  std::span<const std::string> part) {
  std::vector<std::string> out;
  for (const auto& r : layout.registers()) {
    bool in_part = false;
    for (const auto& l : part)
      if (l == r.label) in_part = true;
    if (!in_part) out.push_back(r.label);
  }
  return out;
}

}  // namespace detail

// S(rest | given) = S(all) - S(given)
inline double conditional_entropy(const DensityOperator& rho,
                                  std::span<const std::string> given) {
  if (given.empty() || given.size() >= rho.layout().size())
    throw std::invalid_argument("conditional_entropy: labels must be a proper subset");
  const auto rest = detail::complement_labels(rho.layout(), given);
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, rest));
}

// I(A:B) across cut_a vs its complement
inline double mutual_information(const DensityOperator& rho,
                                 std::span<const std::string> cut_a) {
  if (cut_a.empty() || cut_a.size() >= rho.layout().size())
    throw std::invalid_argument("mutual_information: cut must be a proper bipartition");
  const auto cut_b = detail::complement_labels(rho.layout(), cut_a);
  const double s_a = von_neumann_entropy(partial_trace(rho, cut_b));
  const double s_b = von_neumann_entropy(partial_trace(rho, cut_a));
  const double s_ab = von_neumann_entropy(rho);
  return s_a + s_b - s_ab;
}

inline double mutual_information(const DensityOperator& rho,
                                 std::initializer_list<std::string> cut_a) {
  std::vector<std::string> v(cut_a);
  return mutual_information(rho, std::span<const std::string>(v));
}

struct EntropyReport {
  double S_AB = 0.0;
  double S_A = 0.0;
  double S_B = 0.0;
  double I_AB = 0.0;
  double S_B_given_A = 0.0;  // S(AB) - S(A)
  double S_A_given_B = 0.0;  // S(AB) - S(B)
};

inline EntropyReport entropy_report(const DensityOperator& rho,
                                    std::span<const std::string> cut_a) {
  const auto cut_b = detail::complement_labels(rho.layout(), cut_a);
  EntropyReport r;
  r.S_AB = von_neumann_entropy(rho);
  r.S_A = von_neumann_entropy(partial_trace(rho, cut_b));
  r.S_B = von_neumann_entropy(partial_trace(rho, cut_a));
  r.I_AB = r.S_A + r.S_B - r.S_AB;
  r.S_B_given_A = r.S_AB - r.S_A;
  r.S_A_given_B = r.S_AB - r.S_B;
  return r;
}

// G(rho) = log dim - S(rho)
inline double global_purity(const DensityOperator& rho) {
  return std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

inline double global_purity(const ComplexMatrix& m) {
  return relative_entropy_to_maximally_mixed(m);
}

// Localisable private randomness at `party`: equals the global purity when
// the conditional-entropy hypothesis S(rest|party) > 0 holds.  The two
// conditioning conventions disagree in general; both are evaluated and
// reported, the standard one (S(all) - S(party)) gates the value.
struct LocalisableRandomness {
  std::optional<double> value;          // global purity when applicable
  double global_purity = 0.0;
  double s_rest_given_party = 0.0;      // S(all) - S(party): standard reading
  double s_party_given_rest = 0.0;      // S(all) - S(rest): alternate reading
  bool hypothesis_standard = false;
  bool hypothesis_alternate = false;
};

inline LocalisableRandomness localisable_randomness(const DensityOperator& rho,
                                                    const std::string& party) {
  const auto own = rho.layout().labels_of_party(party);
  if (own.empty() || own.size() == rho.layout().size())
    throw std::invalid_argument("localisable_randomness: party cut is not a bipartition");
  const auto rest = detail::complement_labels(rho.layout(), own);

  LocalisableRandomness out;
  const double s_all = von_neumann_entropy(rho);
  const double s_party = von_neumann_entropy(partial_trace(rho, rest));
  const double s_rest = von_neumann_entropy(partial_trace(rho, own));
  out.global_purity = std::log2(static_cast<double>(rho.dim())) - s_all;
  out.s_rest_given_party = s_all - s_party;
  out.s_party_given_rest = s_all - s_rest;
  out.hypothesis_standard = out.s_rest_given_party > 0.0;
  out.hypothesis_alternate = out.s_party_given_rest > 0.0;
  if (out.hypothesis_standard) out.value = out.global_purity;
  return out;
}

}  // namespace privrand
