#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "privrand/belldiag.hpp"
#include "privrand/bounds.hpp"
#include "privrand/clodcc.hpp"
#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/entropic.hpp"
#include "privrand/format.hpp"
#include "privrand/report.hpp"
#include "privrand/rng.hpp"
#include "privrand/werner.hpp"

// Property suites, one per module, shared between the verify subcommand and
// the test binaries.  Each check reports its worst observed error.
namespace privrand::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline Check make(const std::string& name, double worst, double tol) {
  return Check{name, worst <= tol, "max_err=" + fmt12(worst) + " tol=" + fmt12(tol)};
}

inline SubsystemLayout two_qubits() {
  return SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}};
}

inline std::vector<std::string> labels_a(const DensityOperator& rho) {
  const auto parties = rho.layout().parties();
  return rho.layout().labels_of_party(parties.front());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// densop
// ---------------------------------------------------------------------------

inline std::vector<Check> densop_suite(std::uint64_t seed) {
  std::vector<Check> out;
  const std::vector<SubsystemLayout> layouts{
      detail::two_qubits(),
      SubsystemLayout{{"A", 2, "A"}, {"B", 3, "B"}},
      SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}, {"C", 2, "C"}}};

  {  // partial transposition is an exact entry-wise involution
    double worst = 0.0;
    std::size_t k = 0;
    for (const auto& l : layouts) {
      for (int rep = 0; rep < 8; ++rep, ++k) {
        Rng rng(seed, k);
        const DensityOperator rho = random_state(l, rng);
        const std::vector<std::string> cut{l.at(rng.next_below(l.size())).label};
        const ComplexMatrix g = partial_transpose(rho, std::span<const std::string>(cut));
        const ComplexMatrix gg =
            partial_transpose_matrix(g, l, std::span<const std::string>(cut));
        worst = std::max(worst, gg.max_abs_diff(rho.matrix()));
      }
    }
    out.push_back(detail::make("densop/involution_exact", worst, 0.0));
  }
  {  // trace preserved by partial transposition
    double worst = 0.0;
    for (std::size_t k = 0; k < 16; ++k) {
      Rng rng(seed, 100 + k);
      const DensityOperator rho = random_state(layouts[k % layouts.size()], rng);
      const ComplexMatrix g = partial_transpose(rho, {rho.layout().at(0).label});
      worst = std::max(worst, std::abs(g.trace() - cplx(1.0, 0.0)));
    }
    out.push_back(detail::make("densop/gamma_trace_preserved", worst, 1e-12));
  }
  {  // marginal entropies unchanged by partial transposition
    double worst = 0.0;
    for (std::size_t k = 0; k < 12; ++k) {
      Rng rng(seed, 200 + k);
      const DensityOperator rho = random_state(detail::two_qubits(), rng);
      const DensityOperator g(partial_transpose(rho, {"B"}), rho.layout());
      for (const char* side : {"A", "B"}) {
        const std::vector<std::string> other{side[0] == 'A' ? "B" : "A"};
        const double s1 = von_neumann_entropy(partial_trace(rho, std::span<const std::string>(other)));
        const double s2 = von_neumann_entropy(partial_trace(g, std::span<const std::string>(other)));
        worst = std::max(worst, std::abs(s1 - s2));
      }
    }
    out.push_back(detail::make("densop/marginal_entropy_gamma_invariant", worst, 1e-9));
  }
  {  // eigendecomposition reconstructs the matrix
    double worst = 0.0, worst_res = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
      Rng rng(seed, 300 + k);
      const std::size_t n = 2 + rng.next_below(15);
      ComplexMatrix g(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
      ComplexMatrix h = g + g.adjoint();
      const EigResult r = eig_hermitian_full(h, true);
      ComplexMatrix rec(n, n);
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            rec(i, j) += r.values[e] * r.vectors(i, e) * std::conj(r.vectors(j, e));
      worst = std::max(worst, rec.max_abs_diff(h));
      worst_res = std::max(worst_res, eig_residual(h, r));
    }
    out.push_back(detail::make("densop/eig_reconstruction", worst, 1e-8));
    out.push_back(detail::make("densop/eig_residual", worst_res, 1e-8));
  }
  {  // trace norm symmetry and triangle inequality
    double worst_sym = 0.0, worst_tri = 0.0;
    for (std::size_t k = 0; k < 12; ++k) {
      Rng rng(seed, 400 + k);
      const auto l = detail::two_qubits();
      const DensityOperator a = random_state(l, rng), b = random_state(l, rng),
                            c = random_state(l, rng);
      const double ab = trace_norm(a.matrix() - b.matrix());
      const double ba = trace_norm(b.matrix() - a.matrix());
      const double ac = trace_norm(a.matrix() - c.matrix());
      const double cb = trace_norm(c.matrix() - b.matrix());
      worst_sym = std::max(worst_sym, std::abs(ab - ba));
      worst_tri = std::max(worst_tri, ab - (ac + cb));
    }
    out.push_back(detail::make("densop/trace_norm_symmetry", worst_sym, 1e-9));
    out.push_back(detail::make("densop/trace_norm_triangle", worst_tri, 1e-9));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ensembles
// ---------------------------------------------------------------------------

inline TwistingSpec random_twisting(std::size_t control_dim, const SubsystemLayout& target,
                                    Rng& rng) {
  TwistingSpec spec;
  spec.control_dim = control_dim;
  spec.target_layout = target;
  for (std::size_t i = 0; i < control_dim; ++i)
    spec.unitaries.push_back(random_unitary(target.total_dim(), rng));
  return spec;
}

inline SubsystemLayout sigma_layout(std::size_t da = 2, std::size_t db = 2) {
  return SubsystemLayout{{"Ap", da, "A"}, {"Bp", db, "B"}};
}

inline std::vector<Check> ensembles_suite(std::uint64_t seed) {
  std::vector<Check> out;
  {  // constructors satisfy the density-operator invariants
    double worst_eig = 0.0, worst_defect = 0.0;
    std::vector<DensityOperator> states;
    Rng rng(seed, 1);
    states.push_back(werner(WernerParams{2, 0.3}));
    states.push_back(werner(WernerParams{3, 1.0}));
    states.push_back(werner(WernerParams{4, -0.7}));
    states.push_back(alpha_V(2));
    states.push_back(alpha_V(3));
    states.push_back(max_entangled(3));
    states.push_back(plus_state(4));
    const auto w = random_simplex(4, rng);
    states.push_back(bell_diagonal(BellDiagParams{w[0], w[1], w[2], w[3]}));
    const DensityOperator sigma = random_state(sigma_layout(), rng);
    states.push_back(private_state(2, random_twisting(2, sigma.layout(), rng), sigma));
    states.push_back(local_idit(2, {ComplexMatrix::identity(4), random_unitary(4, rng)}, sigma));
    std::vector<ComplexMatrix> us;
    for (int i = 0; i < 4; ++i) us.push_back(random_unitary(4, rng));
    states.push_back(independent_state(2, 2, us, sigma));
    for (const auto& s : states) {
      const auto v = s.validate();
      worst_eig = std::min(worst_eig, v.min_eigenvalue);
      worst_defect = std::max({worst_defect, v.hermiticity_defect, v.trace_defect});
    }
    out.push_back(detail::make("ensembles/constructor_psd", -worst_eig, kPsdSlack));
    out.push_back(detail::make("ensembles/constructor_hermitian_trace", worst_defect, 1e-10));
  }
  {  // V rho V = rho exactly (V is a permutation)
    double worst = 0.0;
    for (std::size_t d : {2, 3, 4}) {
      const ComplexMatrix v = swap_operator(d);
      for (double a : {-0.5, 0.0, 0.4, 1.0}) {
        const DensityOperator rho = werner(WernerParams{d, a});
        worst = std::max(worst, (v * rho.matrix() * v).max_abs_diff(rho.matrix()));
      }
    }
    out.push_back(detail::make("ensembles/werner_swap_invariance", worst, 0.0));
  }
  {  // werner^Gamma diagonal in the Bell basis at d = 2
    double worst = 0.0;
    const ComplexMatrix basis = generalized_bell_basis(2);
    for (double a : {-0.3, 0.2, 0.8}) {
      const DensityOperator rho = werner(WernerParams{2, a});
      const ComplexMatrix rot =
          basis.adjoint() * partial_transpose(rho, {"B"}) * basis;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (i != j) worst = std::max(worst, std::abs(rot(i, j)));
    }
    out.push_back(detail::make("ensembles/werner_gamma_bell_diagonal_d2", worst, 1e-12));
  }
  {  // controlled shift: unitary, and maps |+>|0> to the entangled vector
    double worst_u = 0.0, worst_v = 0.0;
    for (std::size_t d = 2; d <= 12; ++d) {
      const ComplexMatrix tau = controlled_shift(d);
      worst_u = std::max(worst_u, tau.unitarity_defect());
      std::vector<cplx> in(d * d, 0.0);
      for (std::size_t a = 0; a < d; ++a) in[a * d + 0] = 1.0 / std::sqrt(double(d));
      for (std::size_t r = 0; r < d * d; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < d * d; ++c) acc += tau(r, c) * in[c];
        const cplx want = (r % d == r / d) ? cplx(1.0 / std::sqrt(double(d)), 0.0) : cplx(0.0);
        worst_v = std::max(worst_v, std::abs(acc - want));
      }
    }
    out.push_back(detail::make("ensembles/controlled_shift_unitarity", worst_u, 1e-12));
    out.push_back(detail::make("ensembles/controlled_shift_entangles", worst_v, 1e-12));
  }
  {  // Eq.-style identities: single-control route and local-idit rewrite
    double worst_sc = 0.0, worst_pi = 0.0;
    std::size_t k = 0;
    for (std::size_t d : {2, 3, 4, 6}) {
      for (int rep = 0; rep < 3; ++rep, ++k) {
        Rng rng(seed, 500 + k);
        const DensityOperator sigma = random_state(sigma_layout(), rng);
        const TwistingSpec spec = random_twisting(d, sigma.layout(), rng);
        const DensityOperator gamma = private_state(d, spec, sigma);
        worst_sc = std::max(worst_sc, private_state_single_control(d, spec, sigma)
                                          .matrix()
                                          .max_abs_diff(gamma.matrix()));
        worst_pi = std::max(worst_pi, private_to_independent(d, spec, sigma, 'A')
                                          .matrix()
                                          .max_abs_diff(gamma.matrix()));
        worst_pi = std::max(worst_pi, private_to_independent(d, spec, sigma, 'B')
                                          .matrix()
                                          .max_abs_diff(gamma.matrix()));
      }
    }
    out.push_back(detail::make("ensembles/private_state_single_control", worst_sc, 1e-12));
    out.push_back(detail::make("ensembles/private_to_independent_identity", worst_pi, 1e-12));
  }
  {  // alpha_V block form equals its twisting form
    double worst = 0.0;
    for (std::size_t d : {2, 3, 4}) {
      const SubsystemLayout target{{"Ap", d, "A"}, {"Bp", d, "B"}};
      const DensityOperator sigma = maximally_mixed(target);
      const DensityOperator twisted =
          local_idit(2, {ComplexMatrix::identity(d * d), swap_operator(d)}, sigma);
      worst = std::max(worst, twisted.matrix().max_abs_diff(alpha_V(d).matrix()));
    }
    out.push_back(detail::make("ensembles/alpha_v_twisting_form", worst, 1e-12));
  }
  {  // separability predicate matches the PPT test
    bool ok = true;
    for (std::size_t d : {2, 3}) {
      for (double a = -1.0; a <= 1.0 + 1e-12; a += 0.125) {
        const WernerParams p{d, a};
        const bool ppt = is_ppt(werner(p), {"B"}).ppt;
        if (std::abs(a) > 1e-6 && ppt != p.is_separable()) ok = false;
      }
    }
    out.push_back(Check{"ensembles/werner_separability_matches_ppt", ok,
                        ok ? "predicate agrees with PPT test" : "mismatch"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// entropic
// ---------------------------------------------------------------------------

inline std::vector<Check> entropic_suite(std::uint64_t seed) {
  std::vector<Check> out;
  {  // D(rho || I/d) = log d - S(rho)
    double worst = 0.0;
    for (std::size_t k = 0; k < 500; ++k) {
      Rng rng(seed, 1000 + k);
      const DensityOperator rho = random_state(detail::two_qubits(), rng);
      const double lhs = relative_entropy(rho, maximally_mixed(rho.layout()));
      const double rhs = 2.0 - von_neumann_entropy(rho);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(detail::make("entropic/relent_to_noise_identity", worst, 1e-9));
  }
  {  // I(A:B) = D(rho || rho_A (x) rho_B)
    double worst = 0.0;
    for (std::size_t k = 0; k < 200; ++k) {
      Rng rng(seed, 2000 + k);
      const DensityOperator rho = random_state(detail::two_qubits(), rng);
      const double mi = mutual_information(rho, {"A"});
      const DensityOperator prod = tensor(partial_trace(rho, {"B"}), partial_trace(rho, {"A"}));
      const double dre = relative_entropy(rho.matrix(), prod.matrix());
      worst = std::max(worst, std::abs(mi - dre));
    }
    out.push_back(detail::make("entropic/mi_equals_relent_to_product", worst, 1e-8));
  }
  {  // marginal entropies are Gamma-invariant
    double worst = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      Rng rng(seed, 3000 + k);
      const DensityOperator rho = random_state(detail::two_qubits(), rng);
      const DensityOperator g(partial_transpose(rho, {"B"}), rho.layout());
      const EntropyReport a = entropy_report(rho, std::vector<std::string>{"A"});
      const EntropyReport b = entropy_report(g, std::vector<std::string>{"A"});
      worst = std::max({worst, std::abs(a.S_A - b.S_A), std::abs(a.S_B - b.S_B)});
    }
    out.push_back(detail::make("entropic/marginals_gamma_invariant", worst, 1e-9));
  }
  {  // Werner closed forms vs the spectral functionals
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      for (int k = 0; k <= 20; ++k) {
        const double a = 0.05 * k;
        const DensityOperator rho = werner(WernerParams{d, a});
        worst = std::max(worst, std::abs(werner_mi(d, a) - mutual_information(rho, {"A"})));
        const DensityOperator g(partial_transpose(rho, {"B"}), rho.layout());
        worst = std::max(worst,
                         std::abs(werner_mi_gamma(d, a) - mutual_information(g, {"A"})));
      }
    }
    out.push_back(detail::make("entropic/werner_closed_vs_spectral", worst, 1e-9));
  }
  {  // pinching cannot increase relative entropy
    double worst = 0.0;
    for (std::size_t k = 0; k < 25; ++k) {
      Rng rng(seed, 4000 + k);
      const auto l = detail::two_qubits();
      const DensityOperator rho = random_state(l, rng), sig = random_state(l, rng);
      const double before = relative_entropy(rho, sig);
      for (const char* reg : {"A", "B"}) {
        const double after = relative_entropy(dephase(rho, reg), dephase(sig, reg));
        worst = std::max(worst, after - before);
      }
    }
    out.push_back(detail::make("entropic/pinching_monotone", worst, 1e-8));
  }
  return out;
}

// ---------------------------------------------------------------------------
// clodcc
// ---------------------------------------------------------------------------

inline std::vector<Check> clodcc_suite(std::uint64_t seed, std::size_t circuits_per_profile = 100) {
  std::vector<Check> out;
  const std::vector<SubsystemLayout> profiles{
      SubsystemLayout{{"a", 2, "A"}, {"c", 2, "C"}, {"b", 2, "B"}},
      SubsystemLayout{{"a", 2, "A"}, {"c", 4, "C"}, {"b", 2, "B"}},
      SubsystemLayout{{"a", 3, "A"}, {"c", 3, "C"}, {"b", 3, "B"}}};
  {  // unitality across random circuits
    double worst = 0.0;
    std::size_t k = 0;
    for (const auto& profile : profiles) {
      for (std::size_t rep = 0; rep < circuits_per_profile; ++rep, ++k) {
        Rng rng(seed, 5000 + k);
        const ProtocolCircuit c = random_circuit(profile, 20, rng);
        worst = std::max(worst, verify_unital(c).deviation);
      }
    }
    out.push_back(detail::make("clodcc/unitality_random_circuits", worst, 1e-10));
  }
  {  // apply preserves trace and positivity, and never changes the dimension
    double worst_tr = 0.0, worst_eig = 0.0;
    bool dims_ok = true;
    for (std::size_t k = 0; k < 20; ++k) {
      Rng rng(seed, 6000 + k);
      const auto& profile = profiles[k % profiles.size()];
      const ProtocolCircuit c = random_circuit(profile, 12, rng);
      const DensityOperator rho = random_state(profile, rng);
      const ApplyResult r = apply(c, rho);
      worst_tr = std::max(worst_tr, std::abs(r.state.matrix().trace() - cplx(1.0, 0.0)));
      worst_eig = std::min(worst_eig, eig_values(r.state.matrix()).min());
      dims_ok = dims_ok && r.state.dim() == rho.dim();
    }
    out.push_back(detail::make("clodcc/apply_trace_preserving", worst_tr, 1e-10));
    out.push_back(detail::make("clodcc/apply_positive", -worst_eig, kPsdSlack));
    out.push_back(Check{"clodcc/total_dimension_invariant", dims_ok,
                        dims_ok ? "product dimension constant" : "dimension changed"});
  }
  {  // coarser party map replays every circuit verbatim
    double worst = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
      Rng rng(seed, 7000 + k);
      const auto& profile = profiles[k % profiles.size()];
      const ProtocolCircuit c = random_circuit(profile, 15, rng);
      const DensityOperator rho = random_state(profile, rng);
      const ProtocolCircuit merged = c.with_party_map({{"A", "AB"}, {"B", "AB"}});
      const DensityOperator rho_m = rho.with_layout(merged.layout);
      worst = std::max(worst,
                       apply(c, rho).state.matrix().max_abs_diff(
                           apply(merged, rho_m).state.matrix()));
    }
    out.push_back(detail::make("clodcc/coarser_party_map_replay", worst, 1e-12));
  }
  {  // induced operations: dephasing via send-to-C-and-back
    double worst = 0.0;
    const SubsystemLayout l{{"a", 2, "AB"}, {"b", 2, "AB"}, {"c", 2, "C"}};
    for (std::size_t k = 0; k < 50; ++k) {
      Rng rng(seed, 8000 + k);
      const DensityOperator rho = random_state(l, rng);
      const ComplexMatrix u = random_unitary(4, rng);

      ProtocolCircuit direct;
      direct.layout = l;
      direct.steps.push_back(UnitaryStep{"AB", {"a", "b"}, u});
      direct.steps.push_back(DephaseStep{"a"});

      ProtocolCircuit routed;
      routed.layout = l;
      routed.steps.push_back(UnitaryStep{"AB", {"a", "b"}, u});
      routed.steps.push_back(SendStep{"a", "AB", "C"});
      routed.steps.push_back(SendStep{"a", "C", "AB"});

      worst = std::max(worst, apply(direct, rho).state.matrix().max_abs_diff(
                                  apply(routed, rho).state.matrix()));
    }
    out.push_back(detail::make("clodcc/induced_measurement_equivalence", worst, 1e-10));
  }
  {  // entanglement swapping reaches the target, and fails to I/4 uncorrected
    const ApplyResult swapped = entanglement_swap(true);
    const DensityOperator ab = partial_trace(swapped.state, {"C1", "C2"});
    const DensityOperator psi = max_entangled(2);
    double fid = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        fid += (psi.matrix()(j, i) * ab.matrix()(i, j)).real();
    out.push_back(detail::make("clodcc/swap_fidelity", 1.0 - fid, 1e-10));

    const ApplyResult plain = entanglement_swap(false);
    const DensityOperator ab2 = partial_trace(plain.state, {"C1", "C2"});
    out.push_back(detail::make("clodcc/swap_uncorrected_is_noise",
                               max_deviation_from_uniform(ab2), 1e-10));
    out.push_back(detail::make("clodcc/swap_eve_entropy",
                               std::abs(swapped.eve_entropy_bits() - 2.0), 1e-10));
  }
  return out;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

inline std::vector<Check> bounds_suite(std::uint64_t seed, std::size_t ppt_states = 200) {
  std::vector<Check> out;
  {  // the three restatements of the PPT bound agree
    double worst = 0.0;
    for (std::size_t k = 0; k < ppt_states; ++k) {
      Rng rng(seed, 9000 + k);
      const DensityOperator rho = random_separable_state(detail::two_qubits(), 1, 6, rng);
      const double eq19 = ppt_repeater_bound(rho, rho).value;
      const double eq5 = purity_form_bound(rho, rho).value;
      const BoundReport cor9 = ppt_transposed_rate_bound(rho, rho);
      worst = std::max({worst, std::abs(eq19 - eq5), std::abs(eq19 - cor9.value)});
    }
    out.push_back(detail::make("bounds/three_forms_agree", worst, kEqualityTol));
  }
  {  // eq6 reduction for maximally mixed marginals
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
      Rng rng(seed, 10000 + k);
      // separable Bell-diagonal states have maximally mixed marginals
      std::vector<double> w;
      do {
        w = random_simplex(4, rng);
      } while (*std::max_element(w.begin(), w.end()) > 0.5);
      const DensityOperator rho = bell_diagonal(BellDiagParams{w[0], w[1], w[2], w[3]});
      worst = std::max(worst,
                       std::abs(mi_form_bound(rho).value - ppt_repeater_bound(rho, rho).value));
    }
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const DensityOperator rho = werner(WernerParams{3, a});
      worst = std::max(worst,
                       std::abs(mi_form_bound(rho).value - ppt_repeater_bound(rho, rho).value));
    }
    out.push_back(detail::make("bounds/eq6_reduction", worst, 1e-9));
  }
  {  // single-copy distinguishability never beats the transposed bound
    double worst = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      Rng rng(seed, 11000 + k);
      const DensityOperator rho = werner(WernerParams{2, rng.next_double()});
      const ProtocolCircuit mc = random_circuit(rho.layout(), 8, rng);
      const std::vector<std::string> readout = rho.layout().labels();
      const auto chk =
          single_copy_distinguishability_check(rho, mc, std::span<const std::string>(readout));
      worst = std::max(worst, chk.lhs - chk.rhs);
    }
    out.push_back(detail::make("bounds/single_copy_distinguishability", worst, 1e-8));
  }
  {  // untwist witness respects the ideal-ibit lower bound
    double worst = 0.0;
    const DensityOperator av = alpha_V(2);
    const SubsystemLayout target{{"Ap", 2, "A"}, {"Bp", 2, "B"}};
    TwistingSpec spec;
    spec.control_dim = 2;
    spec.target_layout = target;
    spec.unitaries = {ComplexMatrix::identity(4), swap_operator(2)};
    const DensityOperator sigma = maximally_mixed(target);

    const Lemma7Check exact = lemma7_lower_bound(av, spec, sigma, 1, 0.0);
    worst = std::max(worst, exact.bound - exact.witness);
    for (double eps : {0.01, 0.05}) {
      ComplexMatrix mixed = av.matrix();
      mixed *= cplx(1.0 - eps, 0.0);
      ComplexMatrix noise = kron(ComplexMatrix::identity(2),
                                 partial_trace(av, {"A"}).matrix());
      noise *= cplx(eps / 2.0, 0.0);
      const DensityOperator rho(mixed + noise, av.layout());
      const Lemma7Check c = lemma7_lower_bound(rho, spec, sigma, 1, eps);
      worst = std::max(worst, c.bound - c.witness);
    }
    {
      Rng rng(seed, 12000);
      const DensityOperator s2 = random_state(target, rng);
      const TwistingSpec rnd = random_twisting(2, target, rng);
      const DensityOperator ibit = local_idit(2, rnd.unitaries, s2);
      const Lemma7Check c = lemma7_lower_bound(ibit, rnd, s2, 1, 0.0);
      worst = std::max(worst, c.bound - c.witness);
    }
    out.push_back(detail::make("bounds/lemma7_witness", worst, 1e-8));
  }
  {  // closed-form iid bound: strictly decreasing, crosses 1 after d = 32
    bool ok = true;
    double prev = alpha_iid_bound(12);
    for (std::size_t d = 13; d <= 200; ++d) {
      const double v = alpha_iid_bound(d);
      if (v >= prev) ok = false;
      prev = v;
    }
    for (std::size_t d = 12; d <= 32; ++d)
      if (alpha_iid_bound(d) < 1.0) ok = false;
    for (std::size_t d = 33; d <= 200; ++d)
      if (alpha_iid_bound(d) >= 1.0) ok = false;
    out.push_back(Check{"bounds/alpha_iid_threshold", ok,
                        ok ? "decreasing on [12,200], < 1 iff d > 32" : "threshold violated"});
  }
  {  // iid limitation check on qualifying Werner states
    bool ok = true;
    std::size_t k = 0;
    for (double a : {0.35, 0.4, 0.45, 0.55, 0.6}) {
      const DensityOperator rho =
          werner(WernerParams{2, a}).with_layout(SubsystemLayout{{"A", 2, "A"}, {"C1", 2, "C"}});
      for (std::size_t rep = 0; rep < 4; ++rep, ++k) {
        Rng rng(seed, 13000 + k);
        SubsystemLayout doubled{{"A", 2, "A"}, {"C1", 2, "C"}, {"C2", 2, "C"}, {"B", 2, "B"}};
        const ProtocolCircuit c = random_circuit(doubled, 10, rng);
        const IidLimitationCheck chk = iid_limitation_check(rho, c);
        if (!chk.pass || !chk.hypothesis_ok) ok = false;
      }
    }
    out.push_back(Check{"bounds/iid_limitation_random_circuits", ok,
                        ok ? "output purity within bound" : "bound violated"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// werner
// ---------------------------------------------------------------------------

inline std::vector<Check> werner_suite(std::uint64_t /*seed*/) {
  std::vector<Check> out;
  {  // closed form vs spectral oracle, both informations
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d)
      for (int k = 0; k <= 20; ++k) {
        const double a = 0.05 * k;
        const DensityOperator rho = werner(WernerParams{d, a});
        worst = std::max(worst, std::abs(werner_mi(d, a) - mutual_information(rho, {"A"})));
        const Spectrum closed = werner_gamma_spectrum(d, a);
        const Spectrum spectral = eig_values(partial_transpose(rho, {"B"}));
        for (std::size_t i = 0; i < closed.eigenvalues.size(); ++i)
          worst = std::max(worst,
                           std::abs(closed.eigenvalues[i] - spectral.eigenvalues[i]));
        const DensityOperator g(partial_transpose(rho, {"B"}), rho.layout());
        worst =
            std::max(worst, std::abs(werner_mi_gamma(d, a) - mutual_information(g, {"A"})));
      }
    out.push_back(detail::make("werner/closed_vs_spectral", worst, 1e-9));
  }
  {  // exact equality of the gap sides at (d=2, alpha=1)
    const double margin = std::abs(werner_mi(2, 1.0) - 2.0 * werner_mi_gamma(2, 1.0));
    out.push_back(detail::make("werner/equality_at_d2_alpha1", margin, 1e-12));
  }
  {  // alpha = 1/d is the maximally mixed point
    double worst = 0.0;
    for (std::size_t d = 2; d <= 10; ++d) {
      const DensityOperator rho = werner(WernerParams{d, 1.0 / static_cast<double>(d)});
      worst = std::max(worst, max_deviation_from_uniform(rho));
    }
    out.push_back(detail::make("werner/maximally_mixed_identity", worst, 1e-12));
  }
  {  // large-d envelope of the mutual information
    double worst = 0.0;
    for (std::size_t d = 50; d <= 200; d += 10)
      for (int k = 0; k <= 20; ++k) {
        const double a = 0.05 * k;
        const double limit = 1.0 - binary_entropy(0.5 * (1.0 - a));
        const double excess =
            std::abs(werner_mi(d, a) - limit) - 2.0 / static_cast<double>(d);
        worst = std::max(worst, excess);
      }
    out.push_back(detail::make("werner/asymptotic_envelope", worst, 0.0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// belldiag
// ---------------------------------------------------------------------------

inline std::vector<Check> belldiag_suite(std::uint64_t seed) {
  std::vector<Check> out;
  {  // entropy form agrees with the mutual-information form on 4x4 matrices
    double worst = 0.0;
    for (std::size_t k = 0; k < 1000; ++k) {
      Rng rng(seed, 14000 + k);
      const auto w = random_simplex(4, rng);
      const BellDiagParams p{w[0], w[1], w[2], w[3]};
      const BellDiagGap g = belldiag_gap_condition(p);
      const DensityOperator bg = bell_diagonal_gamma(p);
      const double mi = mutual_information(bg, {"A"});
      const DensityOperator bgg(partial_transpose(bg, {"B"}), bg.layout());
      const double mi_gamma = mutual_information(bgg, {"A"});
      const double margin_mi = mi - 2.0 * mi_gamma;
      const double margin_s = g.rhs - g.lhs;
      worst = std::max(worst, std::abs(margin_mi - margin_s));
    }
    out.push_back(detail::make("belldiag/entropy_vs_mi_form", worst, 1e-9));
  }
  {  // element-wise converse on the fine grid, outside [1/3, 1/2]
    double worst = 0.0;
    for (const auto& p : elementwise_grid(1e-4)) {
      if (p.x > 1.0 / 3.0 + 1e-12 && p.x < 0.5 - 1e-12) continue;
      worst = std::max(worst, p.lhs - p.rhs);
    }
    out.push_back(detail::make("belldiag/elementwise_converse", worst, 1e-9));
  }
  {  // byte-determinism of the search report (volatile runtime field zeroed)
    SearchConfig cfg{2000, seed, true};
    BellSearchReport a = random_search(cfg), b = random_search(cfg);
    a.runtime_ms = 0;
    b.runtime_ms = 0;
    const bool same = to_json(a).dump(2) == to_json(b).dump(2);
    out.push_back(Check{"belldiag/search_determinism", same,
                        same ? "identical bytes for identical seeds" : "reports differ"});
  }
  {  // sampler symmetry: marginal means near 1/4
    double worst = 0.0;
    const std::size_t n = 100000;
    double sums[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < n; ++k) {
      const BellDiagParams p = bell_search_sample(seed, k, true);
      sums[0] += p.a_plus;
      sums[1] += p.a_minus;
      sums[2] += p.b_plus;
      sums[3] += p.b_minus;
    }
    for (double s : sums) worst = std::max(worst, std::abs(s / n - 0.25));
    out.push_back(detail::make("belldiag/sampler_marginal_means", worst, 0.01));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Check> suite_by_name(const std::string& name, std::uint64_t seed) {
  if (name == "densop") return densop_suite(seed);
  if (name == "ensembles") return ensembles_suite(seed);
  if (name == "entropic") return entropic_suite(seed);
  if (name == "clodcc") return clodcc_suite(seed);
  if (name == "bounds") return bounds_suite(seed);
  if (name == "werner") return werner_suite(seed);
  if (name == "belldiag") return belldiag_suite(seed);
  throw std::invalid_argument("unknown suite: " + name);
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"densop", "ensembles", "entropic", "clodcc",
                                              "bounds", "werner", "belldiag"};
  return names;
}

}  // namespace privrand::verify
