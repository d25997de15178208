#pragma once

#include <cmath>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "privrand/densop.hpp"
#include "privrand/density_operator.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/entropic.hpp"
#include "privrand/layout.hpp"
#include "privrand/rng.hpp"
#include "privrand/tolerances.hpp"

namespace privrand {

// ---------------------------------------------------------------------------
// circuit grammar: local unitaries, dephasing, sends through the dephasing
// channel.  No step ever traces anything out; the total dimension is
// invariant across execution.
// ---------------------------------------------------------------------------

struct UnitaryStep {
  std::string party;
  std::vector<std::string> targets;  // matrix ordered by this listing
  ComplexMatrix matrix;
};

struct DephaseStep {
  std::string reg;
};

// A send performs the pinching itself: dephasing is intrinsic to
// transmission, so coherent sends are not expressible.
struct SendStep {
  std::string reg;
  std::string from;
  std::string to;
};

using ProtocolStep = std::variant<UnitaryStep, DephaseStep, SendStep>;

struct ProtocolCircuit {
  SubsystemLayout layout;  // expected initial layout (labels, dims, ownership)
  std::vector<ProtocolStep> steps;
  bool record_eve = false;

  ProtocolCircuit with_party_map(
      const std::vector<std::pair<std::string, std::string>>& map) const {
    auto remap = [&map](const std::string& p) {
      for (const auto& [from, to] : map)
        if (p == from) return to;
      return p;
    };
    ProtocolCircuit out;
    out.layout = layout.with_party_map(map);
    out.record_eve = record_eve;
    for (const auto& step : steps) {
      if (const auto* u = std::get_if<UnitaryStep>(&step)) {
        out.steps.push_back(UnitaryStep{remap(u->party), u->targets, u->matrix});
      } else if (const auto* d = std::get_if<DephaseStep>(&step)) {
        out.steps.push_back(*d);
      } else {
        const auto& s = std::get<SendStep>(step);
        out.steps.push_back(SendStep{s.reg, remap(s.from), remap(s.to)});
      }
    }
    return out;
  }
};

struct EveRecord {
  std::string reg;
  std::vector<double> distribution;
};

struct ApplyResult {
  DensityOperator state;
  std::vector<EveRecord> eve;

  // classical entropy of Eve's ledger: sum over sends of H(distribution)
  double eve_entropy_bits() const {
    double h = 0.0;
    for (const auto& r : eve) h += shannon_bits(r.distribution);
    return h;
  }
};

// Pinching in the computational basis of one register.
inline DensityOperator dephase(const DensityOperator& rho, const std::string& reg) {
  return DensityOperator(pinch_register(rho.matrix(), rho.layout(), reg), rho.layout());
}

namespace detail {

inline void check_circuit_layout(const ProtocolCircuit& c, const SubsystemLayout& l) {
  if (c.layout.size() != l.size())
    throw std::invalid_argument("apply: circuit layout does not match state layout");
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto& a = c.layout.at(i);
    const auto& b = l.at(i);
    if (a.label != b.label || a.dim != b.dim || a.party != b.party)
      throw std::invalid_argument("apply: circuit layout does not match state layout");
  }
}

}  // namespace detail

// Sequential execution.  Sends pinch the register, then hand its ownership
// to the receiver; with record_eve, the register's computational-basis
// distribution at send time is appended to the ledger.
inline ApplyResult apply(const ProtocolCircuit& circuit, const DensityOperator& rho) {
  detail::check_circuit_layout(circuit, rho.layout());
  DensityOperator state = rho;
  std::vector<EveRecord> eve;

  for (const auto& step : circuit.steps) {
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      const SubsystemLayout& l = state.layout();
      for (const auto& t : u->targets) {
        const auto& reg = l.at(l.require(t));
        if (reg.party != u->party)
          throw std::invalid_argument("apply: unitary at " + u->party +
                                      " touches register " + t + " owned by " + reg.party);
      }
      if (u->matrix.unitarity_defect() > kUnitaryTol)
        throw std::invalid_argument("apply: step matrix is not unitary within tolerance");
      state = apply_unitary(state, u->matrix,
                            std::span<const std::string>(u->targets));
    } else if (const auto* d = std::get_if<DephaseStep>(&step)) {
      state = dephase(state, d->reg);
    } else {
      const auto& s = std::get<SendStep>(step);
      const SubsystemLayout& l = state.layout();
      const auto& reg = l.at(l.require(s.reg));
      if (reg.party != s.from)
        throw std::invalid_argument("apply: send of " + s.reg + " from " + s.from +
                                    " but register is owned by " + reg.party);
      state = dephase(state, s.reg);
      if (circuit.record_eve)
        eve.push_back(EveRecord{s.reg, register_distribution(state, s.reg)});
      SubsystemLayout moved = state.layout();
      moved.set_party(s.reg, s.to);
      state = state.with_layout(std::move(moved));
    }
  }
  return ApplyResult{std::move(state), std::move(eve)};
}

inline double max_deviation_from_uniform(const DensityOperator& rho) {
  const std::size_t n = rho.dim();
  ComplexMatrix uniform = ComplexMatrix::identity(n);
  uniform *= cplx(1.0 / static_cast<double>(n), 0.0);
  return rho.matrix().max_abs_diff(uniform);
}

struct UnitalityCheck {
  bool pass = false;
  double deviation = 0.0;
};

// Runs the circuit on the maximally mixed state and reports the largest
// entry deviation from I/D.
inline UnitalityCheck verify_unital(const ProtocolCircuit& circuit) {
  ApplyResult r = apply(circuit, maximally_mixed(circuit.layout));
  const double dev = max_deviation_from_uniform(r.state);
  return UnitalityCheck{dev <= kHermitianTol, dev};
}

// ---------------------------------------------------------------------------
// entanglement swapping script (fixed qubit instance)
// ---------------------------------------------------------------------------

namespace gates {

inline ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h(0, 0) = s; h(0, 1) = s;
  h(1, 0) = s; h(1, 1) = -s;
  return h;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

inline ComplexMatrix cnot() {
  ComplexMatrix c(4, 4);
  c(0, 0) = 1.0; c(1, 1) = 1.0;
  c(2, 3) = 1.0; c(3, 2) = 1.0;
  return c;
}

}  // namespace gates

inline SubsystemLayout entanglement_swap_layout() {
  return SubsystemLayout{{"A", 2, "A"}, {"C1", 2, "C"}, {"C2", 2, "C"}, {"B", 2, "B"}};
}

// psi+ (A,C1) (x) psi+ (C2,B)
inline DensityOperator entanglement_swap_input() {
  const SubsystemLayout layout = entanglement_swap_layout();
  ComplexMatrix psi(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) psi(i * 2 + i, j * 2 + j) = 0.5;
  // reorder (A,C1,C2,B): kron(psi_{AC1}, psi_{C2B}) already matches
  return DensityOperator(kron(psi, psi), layout);
}

inline ProtocolCircuit entanglement_swap_circuit(bool with_correction = true,
                                                 bool record_eve = true) {
  ProtocolCircuit c;
  c.layout = entanglement_swap_layout();
  c.record_eve = record_eve;

  // Bell rotation at C: CNOT(C1 -> C2) then H on C1
  ComplexMatrix bell_rot = kron(gates::hadamard(), ComplexMatrix::identity(2)) * gates::cnot();
  c.steps.push_back(UnitaryStep{"C", {"C1", "C2"}, std::move(bell_rot)});
  c.steps.push_back(SendStep{"C1", "C", "B"});
  c.steps.push_back(SendStep{"C2", "C", "B"});

  if (with_correction) {
    // classically controlled Pauli fix-up on (C1, C2, B): |z,k> controls Z^z X^k
    ComplexMatrix corr(8, 8);
    const ComplexMatrix x = gates::pauli_x(), z = gates::pauli_z();
    for (std::size_t zz = 0; zz < 2; ++zz)
      for (std::size_t kk = 0; kk < 2; ++kk) {
        ComplexMatrix op = ComplexMatrix::identity(2);
        if (kk) op = x * op;
        if (zz) op = z * op;
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t cidx = 0; cidx < 2; ++cidx)
            corr((zz * 2 + kk) * 2 + r, (zz * 2 + kk) * 2 + cidx) = op(r, cidx);
      }
    c.steps.push_back(UnitaryStep{"B", {"C1", "C2", "B"}, std::move(corr)});
  }
  return c;
}

// Runs the swapping script; the AB marginal of the output equals psi+ when
// the correction step is included.
inline ApplyResult entanglement_swap(bool with_correction = true) {
  return apply(entanglement_swap_circuit(with_correction), entanglement_swap_input());
}

// ---------------------------------------------------------------------------
// untwist-and-measure witness
// ---------------------------------------------------------------------------

struct UntwistResult {
  std::vector<double> distribution;   // Fourier-basis outcomes on the control
  double measured_relent_bits = 0.0;  // D(distribution || uniform)
};

// Applies the inverse twisting (control = first register), traces the target
// in post-processing, and measures the control in the Fourier basis.
inline UntwistResult untwist_and_measure(const DensityOperator& state,
                                         const TwistingSpec& spec) {
  spec.check();
  const SubsystemLayout& l = state.layout();
  if (l.size() < 2) throw std::invalid_argument("untwist_and_measure: need control + target");
  const std::size_t dc = l.at(0).dim;
  if (dc != spec.control_dim)
    throw std::invalid_argument("untwist_and_measure: control dimension mismatch");
  const std::size_t nt = state.dim() / dc;
  if (nt != spec.target_layout.total_dim())
    throw std::invalid_argument("untwist_and_measure: target dimension mismatch");

  // U^dagger rho U with U = sum_i |i><i| (x) U_i
  const ComplexMatrix& m = state.matrix();
  ComplexMatrix untwisted(state.dim(), state.dim());
  for (std::size_t i = 0; i < dc; ++i)
    for (std::size_t j = 0; j < dc; ++j) {
      ComplexMatrix blk(nt, nt);
      for (std::size_t x = 0; x < nt; ++x)
        for (std::size_t y = 0; y < nt; ++y) blk(x, y) = m(i * nt + x, j * nt + y);
      blk = spec.unitaries[i].adjoint() * blk * spec.unitaries[j];
      for (std::size_t x = 0; x < nt; ++x)
        for (std::size_t y = 0; y < nt; ++y) untwisted(i * nt + x, j * nt + y) = blk(x, y);
    }

  // control marginal
  ComplexMatrix ctrl(dc, dc);
  for (std::size_t i = 0; i < dc; ++i)
    for (std::size_t j = 0; j < dc; ++j) {
      cplx acc = 0.0;
      for (std::size_t x = 0; x < nt; ++x) acc += untwisted(i * nt + x, j * nt + x);
      ctrl(i, j) = acc;
    }

  // projective measurement in the Fourier basis |f_k> = d^{-1/2} sum_j w^{jk} |j>
  UntwistResult out;
  out.distribution.resize(dc, 0.0);
  for (std::size_t k = 0; k < dc; ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < dc; ++i)
      for (std::size_t j = 0; j < dc; ++j) {
        const double ang = 2.0 * std::numbers::pi *
                           (static_cast<double>(j * k) - static_cast<double>(i * k)) / dc;
        acc += cplx(std::cos(ang), std::sin(ang)) * ctrl(i, j);
      }
    out.distribution[k] = std::max(acc.real() / static_cast<double>(dc), 0.0);
  }
  const std::vector<double> uniform(dc, 1.0 / static_cast<double>(dc));
  out.measured_relent_bits = kl_divergence_bits(out.distribution, uniform);
  return out;
}

// ---------------------------------------------------------------------------
// random circuits (unitality sweeps) and the script format
// ---------------------------------------------------------------------------

inline ProtocolCircuit random_circuit(const SubsystemLayout& layout, std::size_t n_steps,
                                      Rng& rng, bool record_eve = false) {
  ProtocolCircuit c;
  c.layout = layout;
  c.record_eve = record_eve;
  SubsystemLayout current = layout;  // ownership evolves with sends
  const auto parties = layout.parties();
  for (std::size_t s = 0; s < n_steps; ++s) {
    const std::size_t kind = rng.next_below(4);  // bias toward unitaries
    if (kind <= 1) {
      const std::string party = parties[rng.next_below(parties.size())];
      auto own = current.labels_of_party(party);
      if (own.empty()) continue;
      // unitary over a random nonempty prefix of a shuffled ownership list
      for (std::size_t i = own.size(); i > 1; --i)
        std::swap(own[i - 1], own[rng.next_below(i)]);
      own.resize(1 + rng.next_below(own.size()));
      std::size_t dim = 1;
      for (const auto& t : own) dim *= current.at(current.require(t)).dim;
      if (dim > 64) { own.resize(1); dim = current.at(current.require(own[0])).dim; }
      c.steps.push_back(UnitaryStep{party, own, random_unitary(dim, rng)});
    } else if (kind == 2) {
      const auto& reg = current.at(rng.next_below(current.size()));
      c.steps.push_back(DephaseStep{reg.label});
    } else {
      const auto& reg = current.at(rng.next_below(current.size()));
      std::string to = parties[rng.next_below(parties.size())];
      if (to == reg.party) continue;
      c.steps.push_back(SendStep{reg.label, reg.party, to});
      current.set_party(reg.label, to);
    }
  }
  return c;
}

// One step per line:
//   U <party> <regs...> <matrix-file>
//   SEND <reg> <from> <to>
//   DEPH <reg>
// Matrix files hold whitespace-separated "re im" pairs, row-major.  The
// loader resolves file names (e.g. relative to the script location).
inline ProtocolCircuit parse_script(
    std::istream& in, const SubsystemLayout& layout,
    const std::function<ComplexMatrix(const std::string&, std::size_t)>& load_matrix,
    bool record_eve = false) {
  ProtocolCircuit c;
  c.layout = layout;
  c.record_eve = record_eve;
  SubsystemLayout current = layout;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("script line " + std::to_string(lineno) + ": " + msg);
    };
    if (op == "U") {
      std::vector<std::string> tokens;
      std::string t;
      while (ls >> t) tokens.push_back(t);
      if (tokens.size() < 3) fail("expected: U <party> <regs...> <matrix-file>");
      const std::string party = tokens.front();
      const std::string file = tokens.back();
      std::vector<std::string> regs(tokens.begin() + 1, tokens.end() - 1);
      std::size_t dim = 1;
      for (const auto& r : regs) {
        if (!current.has(r)) fail("unknown register " + r);
        const auto& reg = current.at(current.require(r));
        if (reg.party != party)
          fail("register " + r + " is owned by " + reg.party + ", not " + party);
        dim *= reg.dim;
      }
      ComplexMatrix m = load_matrix(file, dim);
      if (m.rows() != dim || m.cols() != dim) fail("matrix dimension mismatch in " + file);
      c.steps.push_back(UnitaryStep{party, std::move(regs), std::move(m)});
    } else if (op == "SEND") {
      std::string reg, from, to;
      if (!(ls >> reg >> from >> to)) fail("expected: SEND <reg> <from> <to>");
      if (!current.has(reg)) fail("unknown register " + reg);
      if (current.at(current.require(reg)).party != from)
        fail("register " + reg + " not owned by " + from);
      c.steps.push_back(SendStep{reg, from, to});
      current.set_party(reg, to);
    } else if (op == "DEPH") {
      std::string reg;
      if (!(ls >> reg)) fail("expected: DEPH <reg>");
      if (!current.has(reg)) fail("unknown register " + reg);
      c.steps.push_back(DephaseStep{reg});
    } else {
      fail("unknown step '" + op + "'");
    }
  }
  return c;
}

}  // namespace privrand
