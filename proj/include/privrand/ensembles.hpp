#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "privrand/complex_matrix.hpp"
#include "privrand/densop.hpp"
#include "privrand/density_operator.hpp"
#include "privrand/layout.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// ---------------------------------------------------------------------------
// parameter types
// ---------------------------------------------------------------------------

// Werner family: rho = (1-theta) rho_s + theta rho_a, alpha = 1 - 2 theta.
struct WernerParams {
  std::size_t d = 2;
  double alpha = 1.0;

  double theta() const { return 0.5 * (1.0 - alpha); }
  static WernerParams from_theta(std::size_t d, double theta) {
    return WernerParams{d, 1.0 - 2.0 * theta};
  }
  // alpha >= 0 (theta <= 1/2); cross-checked against the PPT test in the suite
  bool is_separable() const { return alpha >= 0.0; }
  void check() const {
    if (d < 2) throw std::invalid_argument("werner: d must be >= 2");
    if (alpha < -1.0 || alpha > 1.0) throw std::invalid_argument("werner: alpha out of [-1,1]");
  }
};

// Bell-mixture weights (psi+, psi-, phi+, phi-).
struct BellDiagParams {
  double a_plus = 1.0, a_minus = 0.0, b_plus = 0.0, b_minus = 0.0;

  double sum() const { return a_plus + a_minus + b_plus + b_minus; }
  bool separable() const {
    return a_plus <= 0.5 && a_minus <= 0.5 && b_plus <= 0.5 && b_minus <= 0.5;
  }
  void check() const {
    if (a_plus < 0 || a_minus < 0 || b_plus < 0 || b_minus < 0)
      throw std::invalid_argument("bell_diagonal: negative weight");
    if (std::abs(sum() - 1.0) > 1e-12)
      throw std::invalid_argument("bell_diagonal: weights must sum to 1");
  }
};

// Controlled twisting U = sum_i |i><i| (x) U_i acting on a control register
// of dimension control_dim and a target described by target_layout.
struct TwistingSpec {
  std::size_t control_dim = 2;
  std::vector<ComplexMatrix> unitaries;
  SubsystemLayout target_layout;

  void check() const {
    if (unitaries.size() != control_dim)
      throw std::invalid_argument("twisting: need one unitary per control value");
    for (const auto& u : unitaries) {
      if (!u.square() || u.rows() != target_layout.total_dim())
        throw std::invalid_argument("twisting: unitary dimension != target dimension");
      if (u.unitarity_defect() > kUnitaryTol)
        throw std::invalid_argument("twisting: matrix not unitary within tolerance");
    }
  }
};

// ---------------------------------------------------------------------------
// elementary states and operators
// ---------------------------------------------------------------------------

inline DensityOperator maximally_mixed(const SubsystemLayout& layout) {
  const std::size_t n = layout.total_dim();
  ComplexMatrix m = ComplexMatrix::identity(n);
  m *= cplx(1.0 / static_cast<double>(n), 0.0);
  return DensityOperator(std::move(m), layout);
}

// |+><+| on a single register
inline DensityOperator plus_state(std::size_t d, const std::string& label = "A",
                                  const std::string& party = "A") {
  if (d < 1) throw std::invalid_argument("plus_state: d must be >= 1");
  ComplexMatrix m(d, d);
  const cplx v(1.0 / static_cast<double>(d), 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = v;
  return DensityOperator(std::move(m), SubsystemLayout{{label, d, party}});
}

// rank-1 projector onto (1/sqrt d) sum_i |ii>
inline DensityOperator max_entangled(std::size_t d, const std::string& label_a = "A",
                                     const std::string& label_b = "B") {
  if (d < 1) throw std::invalid_argument("max_entangled: d must be >= 1");
  ComplexMatrix m(d * d, d * d);
  const cplx v(1.0 / static_cast<double>(d), 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i * d + i, j * d + j) = v;
  return DensityOperator(std::move(m), SubsystemLayout{{label_a, d, "A"}, {label_b, d, "B"}});
}

// V = sum_ij |ij><ji|
inline ComplexMatrix swap_operator(std::size_t d) {
  if (d < 1) throw std::invalid_argument("swap_operator: d must be >= 1");
  ComplexMatrix v(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

inline DensityOperator werner(const WernerParams& p) {
  p.check();
  const std::size_t d = p.d, n = d * d;
  const double theta = p.theta();
  ComplexMatrix m(n, n);
  const ComplexMatrix v = swap_operator(d);
  const double cs = (1.0 - theta) / static_cast<double>(n + d);  // symmetric weight
  const double ca = theta / static_cast<double>(n - d);          // antisymmetric weight
  for (std::size_t i = 0; i < n; ++i) m(i, i) = cs + ca;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += (cs - ca) * v(i, j);
  return DensityOperator(std::move(m), SubsystemLayout{{"A", d, "A"}, {"B", d, "B"}});
}

inline DensityOperator werner_symmetric(std::size_t d) { return werner(WernerParams{d, 1.0}); }

// ---------------------------------------------------------------------------
// Bell-diagonal family (two qubits)
// ---------------------------------------------------------------------------

inline DensityOperator bell_diagonal(const BellDiagParams& p) {
  p.check();
  const double ap = p.a_plus, am = p.a_minus, bp = p.b_plus, bm = p.b_minus;
  ComplexMatrix m(4, 4);
  m(0, 0) = m(3, 3) = 0.5 * (ap + am);
  m(0, 3) = m(3, 0) = 0.5 * (ap - am);
  m(1, 1) = m(2, 2) = 0.5 * (bp + bm);
  m(1, 2) = m(2, 1) = 0.5 * (bp - bm);
  return DensityOperator(std::move(m), SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}});
}

// partial transpose of bell_diagonal(p), written directly
inline DensityOperator bell_diagonal_gamma(const BellDiagParams& p) {
  p.check();
  const double ap = p.a_plus, am = p.a_minus, bp = p.b_plus, bm = p.b_minus;
  ComplexMatrix m(4, 4);
  m(0, 0) = m(3, 3) = 0.5 * (ap + am);
  m(0, 3) = m(3, 0) = 0.5 * (bp - bm);
  m(1, 1) = m(2, 2) = 0.5 * (bp + bm);
  m(1, 2) = m(2, 1) = 0.5 * (ap - am);
  return DensityOperator(std::move(m), SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}});
}

// Generalized Bell basis (X^a Z^b (x) I)|psi+>, as columns; diagnostics only.
inline ComplexMatrix generalized_bell_basis(std::size_t d) {
  ComplexMatrix basis(d * d, d * d);
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t col = a * d + b;
      for (std::size_t i = 0; i < d; ++i) {
        // (X^a Z^b (x) I) |ii> = omega^{b i} |i+a mod d> |i>
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * i) / d;
        basis(((i + a) % d) * d + i, col) = inv * cplx(std::cos(angle), std::sin(angle));
      }
    }
  return basis;
}

// ---------------------------------------------------------------------------
// independent states
// ---------------------------------------------------------------------------

// alpha_V: qubit control with twistings {I, V} over a maximally mixed d(x)d
// target; 2d^2 x 2d^2 block form [[I, V],[V, I]] / (2 d^2).
inline DensityOperator alpha_V(std::size_t d) {
  if (d < 2) throw std::invalid_argument("alpha_V: d must be >= 2");
  const std::size_t n = d * d;
  ComplexMatrix m(2 * n, 2 * n);
  const double w = 1.0 / (2.0 * static_cast<double>(n));
  const ComplexMatrix v = swap_operator(d);
  for (std::size_t x = 0; x < n; ++x) {
    m(x, x) = w;
    m(n + x, n + x) = w;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (v(x, y) == cplx(0.0, 0.0)) continue;
      m(x, n + y) = w * v(x, y);
      m(n + x, y) = w * v(x, y);
    }
  return DensityOperator(std::move(m),
                         SubsystemLayout{{"A", 2, "A"}, {"Ap", d, "A"}, {"Bp", d, "B"}});
}

inline std::vector<std::size_t> prime_factors_ascending(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

namespace detail {

// digit-wise modular addition in the mixed-radix system given by `factors`
// (first factor most significant)
inline std::size_t mixed_radix_add(std::size_t b, std::size_t a,
                                   const std::vector<std::size_t>& factors) {
  std::vector<std::size_t> bd(factors.size()), ad(factors.size());
  std::size_t rb = b, ra = a;
  for (std::size_t k = factors.size(); k-- > 0;) {
    bd[k] = rb % factors[k];
    ad[k] = ra % factors[k];
    rb /= factors[k];
    ra /= factors[k];
  }
  std::size_t out = 0;
  for (std::size_t k = 0; k < factors.size(); ++k)
    out = out * factors[k] + (bd[k] + ad[k]) % factors[k];
  return out;
}

}  // namespace detail

// Controlled shift tau on C^d (x) C^d: tau |a>|b> = |a>|b (+) a>, where (+)
// is addition modulo d for prime d and digit-wise modular addition over the
// ascending prime factorization otherwise.  tau (|+> (x) |0>) is the
// maximally entangled vector for every d >= 2.
inline ComplexMatrix controlled_shift(std::size_t d) {
  if (d < 2) throw std::invalid_argument("controlled_shift: d must be >= 2");
  const auto factors = prime_factors_ascending(d);
  ComplexMatrix tau(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      tau(a * d + detail::mixed_radix_add(b, a, factors), a * d + b) = 1.0;
  return tau;
}

// shift permutation S_a on C^d alone: |b> -> |b (+) a>
inline ComplexMatrix shift_permutation(std::size_t d, std::size_t a) {
  const auto factors = prime_factors_ascending(d);
  ComplexMatrix s(d, d);
  for (std::size_t b = 0; b < d; ++b) s(detail::mixed_radix_add(b, a, factors), b) = 1.0;
  return s;
}

// gamma = sum_ij (1/d) |ii><jj| (x) U_i sigma U_j^dagger on A,B,(sigma layout)
inline DensityOperator private_state(std::size_t d, const TwistingSpec& spec,
                                     const DensityOperator& sigma) {
  spec.check();
  if (spec.control_dim != d) throw std::invalid_argument("private_state: control_dim != d");
  if (spec.target_layout.total_dim() != sigma.dim())
    throw std::invalid_argument("private_state: sigma dimension mismatch");
  const std::size_t ns = sigma.dim();
  std::vector<ComplexMatrix> usu(d * d, ComplexMatrix());  // U_i sigma U_j^dagger
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      usu[i * d + j] = spec.unitaries[i] * sigma.matrix() * spec.unitaries[j].adjoint();

  const std::size_t D = d * d * ns;
  ComplexMatrix m(D, D);
  const double w = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t row0 = (i * d + i) * ns, col0 = (j * d + j) * ns;
      const ComplexMatrix& blk = usu[i * d + j];
      for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y) m(row0 + x, col0 + y) = w * blk(x, y);
    }
  SubsystemLayout layout =
      SubsystemLayout{{"A", d, "A"}, {"B", d, "B"}}.concat(sigma.layout());
  return DensityOperator(std::move(m), std::move(layout));
}

// same state built through the single-control route:
// (sum_i |i><i|_A (x) I_B (x) U_i) (psi+ (x) sigma) (...)^dagger
inline DensityOperator private_state_single_control(std::size_t d, const TwistingSpec& spec,
                                                    const DensityOperator& sigma) {
  spec.check();
  const std::size_t ns = sigma.dim();
  const std::size_t D = d * d * ns;
  ComplexMatrix u(D, D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t blk = (i * d + b) * ns;
      for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y) u(blk + x, blk + y) = spec.unitaries[i](x, y);
    }
  const DensityOperator base = tensor(max_entangled(d), sigma);
  ComplexMatrix out = u * base.matrix() * u.adjoint();
  return DensityOperator(std::move(out), base.layout());
}

// alpha = sum_{ijkl} (1/(dA dB)) |i><j| (x) |k><l| (x) U_ik sigma U_jl^dagger;
// unitaries are listed row-major in (i,k).
inline DensityOperator independent_state(std::size_t dA, std::size_t dB,
                                         const std::vector<ComplexMatrix>& unitaries,
                                         const DensityOperator& sigma) {
  if (unitaries.size() != dA * dB)
    throw std::invalid_argument("independent_state: need dA*dB unitaries");
  const std::size_t ns = sigma.dim();
  for (const auto& u : unitaries)
    if (!u.square() || u.rows() != ns)
      throw std::invalid_argument("independent_state: unitary dimension mismatch");
  const std::size_t nAB = dA * dB, D = nAB * ns;
  ComplexMatrix m(D, D);
  const double w = 1.0 / static_cast<double>(nAB);
  for (std::size_t ik = 0; ik < nAB; ++ik) {
    for (std::size_t jl = 0; jl < nAB; ++jl) {
      const ComplexMatrix blk = unitaries[ik] * sigma.matrix() * unitaries[jl].adjoint();
      for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y) m(ik * ns + x, jl * ns + y) = w * blk(x, y);
    }
  }
  SubsystemLayout layout =
      SubsystemLayout{{"A", dA, "A"}, {"B", dB, "B"}}.concat(sigma.layout());
  return DensityOperator(std::move(m), std::move(layout));
}

// one-sided independent state: alpha = sum_ij (1/dA) |i><j| (x) U_i sigma U_j^dagger
inline DensityOperator local_idit(std::size_t dA, const std::vector<ComplexMatrix>& unitaries,
                                  const DensityOperator& sigma) {
  if (unitaries.size() != dA) throw std::invalid_argument("local_idit: need dA unitaries");
  const std::size_t ns = sigma.dim();
  const std::size_t D = dA * ns;
  ComplexMatrix m(D, D);
  const double w = 1.0 / static_cast<double>(dA);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j) {
      const ComplexMatrix blk = unitaries[i] * sigma.matrix() * unitaries[j].adjoint();
      for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y) m(i * ns + x, j * ns + y) = w * blk(x, y);
    }
  SubsystemLayout layout = SubsystemLayout{{"A", dA, "A"}}.concat(sigma.layout());
  return DensityOperator(std::move(m), std::move(layout));
}

// Rewrites a private state as a local independent state: the maximally
// entangled core becomes coherence plus a controlled shift, so the whole
// twisting collapses to a single control at one party over shift-plus-twist
// target unitaries,
//   W = sum_i |i><i|_ctrl (x) S_i (x) U_i,
//   result = W (|+><+|_ctrl (x) |0><0|_shift (x) sigma) W^dagger.
// Entrywise equal to private_state(d, spec, sigma); the control may sit at
// either party.
inline DensityOperator private_to_independent(std::size_t d, const TwistingSpec& spec,
                                              const DensityOperator& sigma,
                                              char control_party = 'A') {
  spec.check();
  if (spec.control_dim != d)
    throw std::invalid_argument("private_to_independent: control_dim != d");
  if (spec.target_layout.total_dim() != sigma.dim())
    throw std::invalid_argument("private_to_independent: sigma dimension mismatch");
  if (control_party != 'A' && control_party != 'B')
    throw std::invalid_argument("private_to_independent: control must be at A or B");
  const std::size_t ns = sigma.dim();
  const std::size_t D = d * d * ns;

  ComplexMatrix proj0(d, d);
  proj0(0, 0) = 1.0;
  ComplexMatrix plus(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) plus(i, j) = 1.0 / static_cast<double>(d);

  ComplexMatrix w(D, D);
  ComplexMatrix base =
      control_party == 'A' ? kron(plus, kron(proj0, sigma.matrix()))
                           : kron(proj0, kron(plus, sigma.matrix()));
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix eii(d, d);
    eii(i, i) = 1.0;
    const ComplexMatrix si = shift_permutation(d, i);
    const ComplexMatrix term = control_party == 'A'
                                   ? kron(eii, kron(si, spec.unitaries[i]))
                                   : kron(si, kron(eii, spec.unitaries[i]));
    w += term;
  }

  ComplexMatrix m = w * base * w.adjoint();
  SubsystemLayout layout =
      SubsystemLayout{{"A", d, "A"}, {"B", d, "B"}}.concat(sigma.layout());
  return DensityOperator(std::move(m), std::move(layout));
}

}  // namespace privrand
