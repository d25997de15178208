#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privrand/complex_matrix.hpp"
#include "privrand/density_operator.hpp"
#include "privrand/eig.hpp"
#include "privrand/layout.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// Kronecker product; layouts concatenate in operand order.
inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron(a, b);
}

// Trace over the named registers; remaining layout order is preserved.
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::span<const std::string> drop) {
  const auto split = IndexSplit::by_labels(rho.layout(), drop);
  const std::size_t keep = split.rest_dim(), gone = split.sel_dim();
  ComplexMatrix out(keep, keep);
  for (std::size_t r = 0; r < keep; ++r)
    for (std::size_t c = 0; c < keep; ++c) {
      cplx acc = 0.0;
      for (std::size_t s = 0; s < gone; ++s)
        acc += rho.matrix()(split.compose(s, r), split.compose(s, c));
      out(r, c) = acc;
    }
  return DensityOperator(std::move(out), rho.layout().drop(drop));
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::initializer_list<std::string> drop) {
  std::vector<std::string> v(drop);
  return partial_trace(rho, std::span<const std::string>(v));
}

// Transposition applied to the named registers only.
inline ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m,
                                              const SubsystemLayout& layout,
                                              std::span<const std::string> cut) {
  if (!m.square() || m.rows() != layout.total_dim())
    throw std::invalid_argument("partial_transpose: matrix/layout mismatch");
  const auto split = IndexSplit::by_labels(layout, cut);
  ComplexMatrix out(m.rows(), m.cols());
  const std::size_t ns = split.sel_dim(), nr = split.rest_dim();
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t sp = 0; sp < ns; ++sp)
      for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t rp = 0; rp < nr; ++rp)
          out(split.compose(sp, r), split.compose(s, rp)) =
              m(split.compose(s, r), split.compose(sp, rp));
  return out;
}

inline ComplexMatrix partial_transpose(const DensityOperator& rho,
                                       std::span<const std::string> cut) {
  return partial_transpose_matrix(rho.matrix(), rho.layout(), cut);
}

inline ComplexMatrix partial_transpose(const DensityOperator& rho,
                                       std::initializer_list<std::string> cut) {
  std::vector<std::string> v(cut);
  return partial_transpose(rho, std::span<const std::string>(v));
}

// Tr|X| for Hermitian X: sum of absolute eigenvalues.
inline double trace_norm(const ComplexMatrix& m) {
  if (m.hermiticity_defect() > kHermitianTol)
    throw std::invalid_argument("trace_norm: matrix not Hermitian");
  Spectrum s = eig_values(m);
  double t = 0.0;
  for (double v : s.eigenvalues) t += std::abs(v);
  return t;
}

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

// PPT test across the given cut: true iff min eig of rho^Gamma >= -kPsdSlack.
inline PptResult is_ppt(const DensityOperator& rho, std::span<const std::string> cut) {
  ComplexMatrix g = partial_transpose(rho, cut);
  Spectrum s = eig_values(g);
  return PptResult{s.min() >= -kPsdSlack, s.min()};
}

inline PptResult is_ppt(const DensityOperator& rho, std::initializer_list<std::string> cut) {
  std::vector<std::string> v(cut);
  return is_ppt(rho, std::span<const std::string>(v));
}

// U acting on the listed registers (matrix ordered by the listed order),
// embedded into the full space.
inline ComplexMatrix embed_unitary(const ComplexMatrix& u, const SubsystemLayout& layout,
                                   std::span<const std::string> targets) {
  const auto split = IndexSplit::by_labels(layout, targets);
  if (u.rows() != split.sel_dim())
    throw std::invalid_argument("embed_unitary: matrix dimension != product of target dims");
  const std::size_t D = layout.total_dim();
  ComplexMatrix out(D, D);
  for (std::size_t s = 0; s < split.sel_dim(); ++s)
    for (std::size_t sp = 0; sp < split.sel_dim(); ++sp) {
      const cplx uv = u(s, sp);
      if (uv == cplx(0.0, 0.0)) continue;
      for (std::size_t r = 0; r < split.rest_dim(); ++r)
        out(split.compose(s, r), split.compose(sp, r)) = uv;
    }
  return out;
}

// rho -> U rho U^dagger with U on the listed registers.
inline DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                                     std::span<const std::string> targets) {
  ComplexMatrix full = embed_unitary(u, rho.layout(), targets);
  return DensityOperator(full * rho.matrix() * full.adjoint(), rho.layout());
}

inline DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                                     std::initializer_list<std::string> targets) {
  std::vector<std::string> v(targets);
  return apply_unitary(rho, u, std::span<const std::string>(v));
}

// Pinching in the computational basis of one register.
inline ComplexMatrix pinch_register(const ComplexMatrix& m, const SubsystemLayout& layout,
                                    const std::string& reg) {
  const std::vector<std::size_t> sel{layout.require(reg)};
  const IndexSplit split(layout, sel);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t s = 0; s < split.sel_dim(); ++s)
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
      for (std::size_t rp = 0; rp < split.rest_dim(); ++rp)
        out(split.compose(s, r), split.compose(s, rp)) =
            m(split.compose(s, r), split.compose(s, rp));
  return out;
}

// Uhlmann fidelity F(rho, sigma) = (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.
inline double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("fidelity: dimension mismatch");
  const EigResult es = eig_hermitian_full(sigma, true);
  const std::size_t n = sigma.rows();
  ComplexMatrix root(n, n);
  for (std::size_t e = 0; e < n; ++e) {
    const double lam = std::sqrt(std::max(es.values[e], 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        root(i, j) += lam * es.vectors(i, e) * std::conj(es.vectors(j, e));
  }
  const Spectrum inner = eig_values(root * rho * root);
  double acc = 0.0;
  for (double v : inner.eigenvalues) acc += std::sqrt(std::max(v, 0.0));
  return acc * acc;
}

// Joint computational-basis distribution of the named registers (diagonal of
// their marginal), computed without disturbing the state.
inline std::vector<double> registers_distribution(const DensityOperator& rho,
                                                  std::span<const std::string> regs) {
  const auto split = IndexSplit::by_labels(rho.layout(), regs);
  std::vector<double> p(split.sel_dim(), 0.0);
  for (std::size_t s = 0; s < split.sel_dim(); ++s)
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
      p[s] += rho.matrix()(split.compose(s, r), split.compose(s, r)).real();
  return p;
}

inline std::vector<double> register_distribution(const DensityOperator& rho,
                                                 const std::string& reg) {
  const std::vector<std::string> one{reg};
  return registers_distribution(rho, one);
}

}  // namespace privrand
