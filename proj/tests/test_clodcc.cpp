#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "privrand/bounds.hpp"
#include "privrand/clodcc.hpp"
#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/rng.hpp"
#include "privrand/verify.hpp"

using namespace privrand;
using Catch::Matchers::WithinAbs;

TEST_CASE("dephasing channel", "[clodcc]") {
  SECTION("kills the coherence of |+>") {
    const DensityOperator out = dephase(plus_state(2), "A");
    REQUIRE(out.matrix().max_abs_diff(ComplexMatrix::identity(2) * cplx(0.5, 0.0)) == 0.0);
  }

  SECTION("fixes diagonal states") {
    ComplexMatrix diag(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    const DensityOperator rho(diag, SubsystemLayout{{"A", 2, "A"}});
    REQUIRE(dephase(rho, "A").matrix().max_abs_diff(rho.matrix()) == 0.0);
  }

  SECTION("is idempotent on random states") {
    const SubsystemLayout l{{"A", 2, "A"}, {"B", 3, "B"}};
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
      Rng rng(6100 + k);
      const DensityOperator rho = random_state(l, rng);
      const DensityOperator once = dephase(rho, "B");
      worst = std::max(worst, dephase(once, "B").matrix().max_abs_diff(once.matrix()));
    }
    REQUIRE(worst <= 1e-12);
  }

  SECTION("unknown register is rejected") {
    REQUIRE_THROWS_AS(dephase(plus_state(2), "Q"), std::invalid_argument);
  }
}

TEST_CASE("circuit application", "[clodcc]") {
  const SubsystemLayout l{{"a", 2, "A"}, {"c", 2, "C"}, {"b", 2, "B"}};

  SECTION("empty circuit is the identity") {
    Rng rng(41);
    const DensityOperator rho = random_state(l, rng);
    ProtocolCircuit c;
    c.layout = l;
    REQUIRE(apply(c, rho).state.matrix().max_abs_diff(rho.matrix()) == 0.0);
  }

  SECTION("random circuits preserve maximal noise") {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 50; ++k) {
      Rng rng(6200 + k);
      const ProtocolCircuit c = random_circuit(l, 15, rng);
      worst = std::max(worst, verify_unital(c).deviation);
    }
    REQUIRE(worst <= 1e-10);
  }

  SECTION("cross-party unitaries are rejected") {
    ProtocolCircuit c;
    c.layout = l;
    c.steps.push_back(UnitaryStep{"A", {"a", "b"}, ComplexMatrix::identity(4)});
    REQUIRE_THROWS_WITH(apply(c, maximally_mixed(l)),
                        Catch::Matchers::ContainsSubstring("owned by"));
  }

  SECTION("sending a register you do not own is rejected") {
    ProtocolCircuit c;
    c.layout = l;
    c.steps.push_back(SendStep{"b", "A", "C"});
    REQUIRE_THROWS_AS(apply(c, maximally_mixed(l)), std::invalid_argument);
  }

  SECTION("sends pinch and hand over ownership") {
    ProtocolCircuit c;
    c.layout = l;
    c.record_eve = true;
    c.steps.push_back(UnitaryStep{"A", {"a"}, gates::hadamard()});
    c.steps.push_back(SendStep{"a", "A", "B"});
    ComplexMatrix one(8, 8);
    one(0, 0) = 1.0;  // |000>
    const ApplyResult r = apply(c, DensityOperator(one, l));
    // after H and the dephasing send, register a is classical and uniform
    REQUIRE(r.state.layout().at(0).party == "B");
    REQUIRE(r.eve.size() == 1);
    REQUIRE_THAT(r.eve[0].distribution[0], WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(r.state.matrix()(0, 4).real(), WithinAbs(0.0, 1e-12));
  }

  SECTION("unitality checker flags a non-uniform state") {
    // negative control for the checker itself
    ComplexMatrix one(8, 8);
    one(0, 0) = 1.0;
    REQUIRE(max_deviation_from_uniform(DensityOperator(one, l)) > 0.5);
  }
}

TEST_CASE("entanglement swapping", "[clodcc]") {
  SECTION("corrected protocol reaches the entangled pair") {
    const ApplyResult r = entanglement_swap(true);
    const DensityOperator ab = partial_trace(r.state, {"C1", "C2"});
    REQUIRE(ab.matrix().max_abs_diff(max_entangled(2).matrix()) <= 1e-12);
    REQUIRE(fidelity(ab.matrix(), max_entangled(2).matrix()) >= 1.0 - 1e-10);
  }

  SECTION("without correction the pair is maximal noise") {
    const ApplyResult r = entanglement_swap(false);
    const DensityOperator ab = partial_trace(r.state, {"C1", "C2"});
    REQUIRE(max_deviation_from_uniform(ab) <= 1e-10);
  }

  SECTION("Eve ledger holds two uniformly random bits") {
    const ApplyResult r = entanglement_swap(true);
    REQUIRE(r.eve.size() == 2);
    REQUIRE_THAT(r.eve_entropy_bits(), WithinAbs(2.0, 1e-10));
  }
}

TEST_CASE("untwist and measure", "[clodcc]") {
  const SubsystemLayout target{{"Ap", 2, "A"}, {"Bp", 2, "B"}};
  TwistingSpec spec;
  spec.control_dim = 2;
  spec.target_layout = target;
  spec.unitaries = {ComplexMatrix::identity(4), swap_operator(2)};

  SECTION("exact independent state: deterministic Fourier outcome") {
    const UntwistResult r = untwist_and_measure(alpha_V(2), spec);
    REQUIRE_THAT(r.distribution[0], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(r.measured_relent_bits, WithinAbs(1.0, 1e-9));
  }

  SECTION("maximal noise carries no witness") {
    const UntwistResult r = untwist_and_measure(maximally_mixed(alpha_V(2).layout()), spec);
    REQUIRE_THAT(r.measured_relent_bits, WithinAbs(0.0, 1e-12));
  }

  SECTION("depolarized input stays above the ideal-ibit bound") {
    const double eps = 0.01;
    const DensityOperator av = alpha_V(2);
    ComplexMatrix mixed = av.matrix();
    mixed *= cplx(1.0 - eps, 0.0);
    ComplexMatrix noise = kron(ComplexMatrix::identity(2), partial_trace(av, {"A"}).matrix());
    noise *= cplx(eps / 2.0, 0.0);
    const UntwistResult r =
        untwist_and_measure(DensityOperator(mixed + noise, av.layout()), spec);
    REQUIRE(r.measured_relent_bits >= (1.0 - eps) * 1.0 - binary_entropy(eps) - 1e-8);
  }

  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(untwist_and_measure(alpha_V(3), spec), std::invalid_argument);
  }
}

TEST_CASE("script parsing", "[clodcc]") {
  const SubsystemLayout l{{"a", 2, "A"}, {"c", 2, "C"}, {"b", 2, "B"}};
  auto loader = [](const std::string& name, std::size_t dim) {
    REQUIRE(name == "had.mat");
    REQUIRE(dim == 2);
    return gates::hadamard();
  };

  SECTION("well-formed script round trip") {
    std::istringstream in(
        "# rotate, then ship the register to B\n"
        "U A a had.mat\n"
        "DEPH c\n"
        "SEND a A B\n");
    const ProtocolCircuit c = parse_script(in, l, loader);
    REQUIRE(c.steps.size() == 3);
    REQUIRE(verify_unital(c).pass);
  }

  SECTION("cross-party unitary is rejected with a diagnostic") {
    std::istringstream in("U A a b had.mat\n");
    REQUIRE_THROWS_WITH(parse_script(in, l, loader),
                        Catch::Matchers::ContainsSubstring("owned by"));
  }

  SECTION("unknown step is rejected") {
    std::istringstream in("MEASURE a\n");
    REQUIRE_THROWS_WITH(parse_script(in, l, loader),
                        Catch::Matchers::ContainsSubstring("unknown step"));
  }

  SECTION("sends respect current ownership across the script") {
    std::istringstream in("SEND a A C\nSEND a C B\n");
    const ProtocolCircuit c = parse_script(in, l, loader);
    REQUIRE(c.steps.size() == 2);
    std::istringstream bad("SEND a A C\nSEND a A B\n");
    REQUIRE_THROWS_AS(parse_script(bad, l, loader), std::invalid_argument);
  }
}

TEST_CASE("clodcc property suite", "[clodcc]") {
  // lighter sweep here; the acceptance run uses the full 100 per profile
  for (const auto& check : verify::clodcc_suite(20240901, 25)) {
    INFO(check.name << " " << check.detail);
    REQUIRE(check.pass);
  }
}
