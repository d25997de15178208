#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "privrand/complex_matrix.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// Real spectrum of a Hermitian matrix, sorted descending, with the worst
// eigenpair residual max_i |M v_i - lambda_i v_i|.
struct Spectrum {
  std::vector<double> eigenvalues;
  double residual = 0.0;

  double sum() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
  }
  double min() const {
    return eigenvalues.empty() ? 0.0 : eigenvalues.back();
  }
};

struct EigResult {
  std::vector<double> values;    // ascending, matching vector columns
  ComplexMatrix vectors;         // column i is the eigenvector of values[i]
  double off_norm = 0.0;         // final off-diagonal Frobenius norm
  int sweeps = 0;
};

namespace detail {

inline double off_diagonal_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi eigensolver for Hermitian matrices.  Sweeps over all (p,q)
// pairs applying complex plane rotations until the off-diagonal Frobenius
// norm drops below kJacobiOffTol.
inline EigResult eig_hermitian_full(const ComplexMatrix& m, bool want_vectors = true,
                                    int max_sweeps = 64) {
  if (!m.square()) throw std::invalid_argument("eig_hermitian: matrix not square");
  if (m.hermiticity_defect() > kHermitianTol)
    throw std::invalid_argument("eig_hermitian: matrix not Hermitian within tolerance");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // symmetrize so rotations act on an exactly Hermitian matrix
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }

  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  EigResult res;
  double off = detail::off_diagonal_frobenius(a);
  int sweep = 0;
  while (off > kJacobiOffTol && sweep < max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;          // J(p,q) entry
        const cplx spc = s * std::conj(phase);

        // columns p,q:  A <- A J  with J = [[c, sp], [-spc, c]]
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - spc * akq;
          a(k, q) = sp * akp + c * akq;
        }
        // rows p,q:  A <- J^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = spc * apk + c * aqk;
        }
        a(p, q) = cplx(0.0, 0.0);
        a(q, p) = cplx(0.0, 0.0);
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - spc * vkq;
            v(k, q) = sp * vkp + c * vkq;
          }
        }
      }
    }
    off = detail::off_diagonal_frobenius(a);
    ++sweep;
  }

  res.off_norm = off;
  res.sweeps = sweep;
  res.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.values[i] = a(i, i).real();

  if (want_vectors) {
    // sort ascending, permuting vector columns alongside
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t x, std::size_t y) { return res.values[x] < res.values[y]; });
    std::vector<double> vals(n);
    ComplexMatrix vec(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = res.values[perm[i]];
      for (std::size_t k = 0; k < n; ++k) vec(k, i) = v(k, perm[i]);
    }
    res.values = std::move(vals);
    res.vectors = std::move(vec);
  } else {
    std::sort(res.values.begin(), res.values.end());
  }
  return res;
}

inline double eig_residual(const ComplexMatrix& m, const EigResult& r) {
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t row = 0; row < n; ++row) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += m(row, k) * r.vectors(k, i);
      acc -= r.values[i] * r.vectors(row, i);
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

// Full spectrum sorted descending plus the eigenpair residual.
inline Spectrum eig_hermitian(const ComplexMatrix& m) {
  EigResult r = eig_hermitian_full(m, true);
  Spectrum s;
  s.residual = eig_residual(m, r);
  s.eigenvalues.assign(r.values.rbegin(), r.values.rend());
  return s;
}

// Eigenvalues only (descending); cheaper when vectors are not needed.
inline Spectrum eig_values(const ComplexMatrix& m) {
  EigResult r = eig_hermitian_full(m, false);
  Spectrum s;
  s.residual = r.off_norm;
  s.eigenvalues.assign(r.values.rbegin(), r.values.rend());
  return s;
}

}  // namespace privrand
