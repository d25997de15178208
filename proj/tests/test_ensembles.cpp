#include <catch2/catch_amalgamated.hpp>

#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/rng.hpp"
#include "privrand/verify.hpp"

#include "oracles.hpp"

using namespace privrand;
using Catch::Matchers::WithinAbs;

TEST_CASE("elementary states", "[ensembles]") {
  SECTION("plus state entries") {
    const DensityOperator p = plus_state(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) REQUIRE(p.matrix()(i, j) == cplx(0.5, 0.0));
  }

  SECTION("entangled marginal at d=3") {
    const DensityOperator m = partial_trace(max_entangled(3), {"B"});
    REQUIRE(m.matrix().max_abs_diff(ComplexMatrix::identity(3) * cplx(1.0 / 3.0, 0.0)) <=
            1e-15);
  }

  SECTION("maximally mixed spectrum") {
    const Spectrum s =
        eig_values(maximally_mixed(SubsystemLayout{{"A", 4, "A"}}).matrix());
    for (double v : s.eigenvalues) REQUIRE_THAT(v, WithinAbs(0.25, 1e-14));
  }

  SECTION("max_entangled is rank one") {
    const Spectrum s = eig_values(max_entangled(3).matrix());
    REQUIRE_THAT(s.eigenvalues.front(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(s.eigenvalues[1], WithinAbs(0.0, 1e-12));
  }

  SECTION("d < 1 is rejected") {
    REQUIRE_THROWS_AS(plus_state(0), std::invalid_argument);
  }
}

TEST_CASE("swap operator", "[ensembles]") {
  SECTION("exchanges basis states at d=2") {
    const ComplexMatrix v = swap_operator(2);
    // V|01> = |10>
    REQUIRE(v(2, 1) == cplx(1.0, 0.0));
    REQUIRE(v(1, 2) == cplx(1.0, 0.0));
    REQUIRE((v * v).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  }

  SECTION("trace equals d") {
    for (std::size_t d : {2, 3, 5})
      REQUIRE_THAT(swap_operator(d).trace().real(), WithinAbs(static_cast<double>(d), 0.0));
  }

  SECTION("eigenvalue multiplicities d(d+1)/2 and d(d-1)/2") {
    for (std::size_t d : {2, 3, 4}) {
      const Spectrum s = eig_values(swap_operator(d));
      std::size_t plus = 0, minus = 0;
      for (double v : s.eigenvalues) {
        if (std::abs(v - 1.0) < 1e-9) ++plus;
        else if (std::abs(v + 1.0) < 1e-9) ++minus;
      }
      REQUIRE(plus == d * (d + 1) / 2);
      REQUIRE(minus == d * (d - 1) / 2);
    }
  }
}

TEST_CASE("werner family", "[ensembles]") {
  SECTION("alpha=1 is the symmetric state") {
    for (std::size_t d : {2, 3}) {
      const std::size_t n = d * d;
      ComplexMatrix want = ComplexMatrix::identity(n) + swap_operator(d);
      want *= cplx(1.0 / static_cast<double>(n + d), 0.0);
      REQUIRE(werner(WernerParams{d, 1.0}).matrix().max_abs_diff(want) <= 1e-15);
    }
  }

  SECTION("alpha = 1/d is maximally mixed") {
    for (std::size_t d : {2, 3, 5}) {
      const DensityOperator rho = werner(WernerParams{d, 1.0 / static_cast<double>(d)});
      ComplexMatrix mm = ComplexMatrix::identity(d * d);
      mm *= cplx(1.0 / static_cast<double>(d * d), 0.0);
      REQUIRE(rho.matrix().max_abs_diff(mm) <= 1e-15);
    }
  }

  SECTION("out-of-range alpha is rejected") {
    REQUIRE_THROWS_AS(werner(WernerParams{2, 1.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(werner(WernerParams{1, 0.0}), std::invalid_argument);
  }

  SECTION("theta parametrization round-trips") {
    const WernerParams p = WernerParams::from_theta(3, 0.25);
    REQUIRE_THAT(p.alpha, WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(p.theta(), WithinAbs(0.25, 1e-15));
  }
}

TEST_CASE("bell diagonal states", "[ensembles]") {
  SECTION("pure weight gives the entangled projector") {
    REQUIRE(bell_diagonal(BellDiagParams{1, 0, 0, 0})
                .matrix()
                .max_abs_diff(max_entangled(2).matrix()) <= 1e-15);
  }

  SECTION("uniform weights give noise") {
    REQUIRE(bell_diagonal(BellDiagParams{0.25, 0.25, 0.25, 0.25})
                .matrix()
                .max_abs_diff(ComplexMatrix::identity(4) * cplx(0.25, 0.0)) <= 1e-15);
  }

  SECTION("direct transposed constructor matches the generic partial transpose") {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
      Rng rng(31000 + k);
      const auto w = random_simplex(4, rng);
      const BellDiagParams p{w[0], w[1], w[2], w[3]};
      const ComplexMatrix generic = partial_transpose(bell_diagonal(p), {"B"});
      worst = std::max(worst, bell_diagonal_gamma(p).matrix().max_abs_diff(generic));
    }
    REQUIRE(worst <= 1e-12);
  }

  SECTION("simplex violations are rejected") {
    REQUIRE_THROWS_AS(bell_diagonal(BellDiagParams{0.5, 0.5, 0.5, 0.5}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bell_diagonal(BellDiagParams{1.2, -0.2, 0, 0}), std::invalid_argument);
  }
}

TEST_CASE("alpha_V family", "[ensembles]") {
  SECTION("entropy is 2 log d") {
    for (std::size_t d : {2, 3, 4}) {
      const Spectrum s = eig_values(alpha_V(d).matrix());
      double entropy = 0.0;
      for (double v : s.eigenvalues)
        if (v > 1e-14) entropy -= v * std::log2(v);
      REQUIRE_THAT(entropy, WithinAbs(2.0 * std::log2(static_cast<double>(d)), 1e-9));
      // nonzero spectrum is flat at 1/d^2
      for (std::size_t i = 0; i < d * d; ++i)
        REQUIRE_THAT(s.eigenvalues[i], WithinAbs(1.0 / (d * d), 1e-12));
    }
  }

  SECTION("global purity is one bit") {
    for (std::size_t d : {2, 3, 4}) {
      const Spectrum s = eig_values(alpha_V(d).matrix());
      double entropy = 0.0;
      for (double v : s.eigenvalues)
        if (v > 1e-14) entropy -= v * std::log2(v);
      REQUIRE_THAT(std::log2(2.0 * d * d) - entropy, WithinAbs(1.0, 1e-9));
    }
  }

  SECTION("transposed distance to noise obeys the 2/d envelope with value 1/d") {
    for (std::size_t d = 2; d <= 8; ++d) {
      const DensityOperator av = alpha_V(d);
      const ComplexMatrix g = partial_transpose(av, {"Bp"});
      ComplexMatrix mm = ComplexMatrix::identity(2 * d * d);
      mm *= cplx(1.0 / (2.0 * d * d), 0.0);
      const double t = trace_norm(g - mm);
      REQUIRE(t <= 2.0 / static_cast<double>(d) + 1e-12);
      REQUIRE_THAT(t, WithinAbs(1.0 / static_cast<double>(d), 1e-9));
    }
  }

  SECTION("d < 2 is rejected") { REQUIRE_THROWS_AS(alpha_V(1), std::invalid_argument); }
}

TEST_CASE("controlled shift", "[ensembles]") {
  SECTION("d=2 is the controlled-not") {
    const ComplexMatrix tau = controlled_shift(2);
    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    REQUIRE(tau.max_abs_diff(cnot) == 0.0);
  }

  SECTION("creates the entangled vector from |+>|0>, composite d included") {
    for (std::size_t d : {2, 4, 6, 12}) {
      const ComplexMatrix tau = controlled_shift(d);
      std::vector<cplx> in(d * d, 0.0);
      for (std::size_t a = 0; a < d; ++a) in[a * d] = 1.0 / std::sqrt(double(d));
      double worst = 0.0;
      for (std::size_t r = 0; r < d * d; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < d * d; ++c) acc += tau(r, c) * in[c];
        const cplx want =
            (r / d == r % d) ? cplx(1.0 / std::sqrt(double(d)), 0.0) : cplx(0.0, 0.0);
        worst = std::max(worst, std::abs(acc - want));
      }
      REQUIRE(worst <= 1e-12);
    }
  }

  SECTION("prime factorization is ascending") {
    REQUIRE(prime_factors_ascending(12) == std::vector<std::size_t>{2, 2, 3});
    REQUIRE(prime_factors_ascending(7) == std::vector<std::size_t>{7});
  }
}

TEST_CASE("private states", "[ensembles]") {
  const SubsystemLayout target{{"Ap", 2, "A"}, {"Bp", 2, "B"}};

  SECTION("trivial twisting gives the product with the entangled projector") {
    Rng rng(77);
    const DensityOperator sigma = random_state(target, rng);
    TwistingSpec spec;
    spec.control_dim = 2;
    spec.target_layout = target;
    spec.unitaries = {ComplexMatrix::identity(4), ComplexMatrix::identity(4)};
    const DensityOperator gamma = private_state(2, spec, sigma);
    REQUIRE(gamma.matrix().max_abs_diff(tensor(max_entangled(2), sigma).matrix()) <= 1e-14);
    REQUIRE(partial_trace(gamma, {"Ap", "Bp"})
                .matrix()
                .max_abs_diff(max_entangled(2).matrix()) <= 1e-14);
  }

  SECTION("single-control reconstruction matches the direct form") {
    for (std::size_t d : {2, 3, 4}) {
      Rng rng(1000 + d);
      const DensityOperator sigma = random_state(target, rng);
      const TwistingSpec spec = verify::random_twisting(d, target, rng);
      const DensityOperator direct = private_state(d, spec, sigma);
      const DensityOperator routed = private_state_single_control(d, spec, sigma);
      REQUIRE(routed.matrix().max_abs_diff(direct.matrix()) <= 1e-12);
    }
  }

  SECTION("dimension mismatches are rejected") {
    Rng rng(3);
    const DensityOperator sigma = random_state(target, rng);
    TwistingSpec spec = verify::random_twisting(3, target, rng);
    REQUIRE_THROWS_AS(private_state(2, spec, sigma), std::invalid_argument);
  }
}

TEST_CASE("independent states", "[ensembles]") {
  const SubsystemLayout target{{"Ap", 2, "A"}, {"Bp", 2, "B"}};

  SECTION("trivial twisting gives the coherent product") {
    Rng rng(9);
    const DensityOperator sigma = random_state(target, rng);
    std::vector<ComplexMatrix> us(4, ComplexMatrix::identity(4));
    const DensityOperator alpha = independent_state(2, 2, us, sigma);
    const DensityOperator want =
        tensor(tensor(plus_state(2, "A", "A"), plus_state(2, "B", "B")), sigma);
    REQUIRE(alpha.matrix().max_abs_diff(want.matrix()) <= 1e-14);
  }

  SECTION("local idit with swap twisting is alpha_V") {
    for (std::size_t d : {2, 3}) {
      const SubsystemLayout t{{"Ap", d, "A"}, {"Bp", d, "B"}};
      const DensityOperator twisted = local_idit(
          2, {ComplexMatrix::identity(d * d), swap_operator(d)}, maximally_mixed(t));
      REQUIRE(twisted.matrix().max_abs_diff(alpha_V(d).matrix()) <= 1e-14);
    }
  }

  SECTION("coherence next to noise is a valid one-bit independent state") {
    const DensityOperator ibit =
        tensor(plus_state(2, "A", "A"),
               maximally_mixed(SubsystemLayout{{"Bp", 2, "B"}}));
    REQUIRE(ibit.validate().ok());
  }
}

TEST_CASE("private to independent rewrite", "[ensembles]") {
  const SubsystemLayout target{{"Ap", 2, "A"}, {"Bp", 2, "B"}};

  SECTION("entrywise identity for prime and composite d, both control sides") {
    for (std::size_t d : {2, 4}) {
      Rng rng(4000 + d);
      const DensityOperator sigma = random_state(target, rng);
      const TwistingSpec spec = verify::random_twisting(d, target, rng);
      const DensityOperator gamma = private_state(d, spec, sigma);
      REQUIRE(private_to_independent(d, spec, sigma, 'A')
                  .matrix()
                  .max_abs_diff(gamma.matrix()) <= 1e-12);
      REQUIRE(private_to_independent(d, spec, sigma, 'B')
                  .matrix()
                  .max_abs_diff(gamma.matrix()) <= 1e-12);
    }
  }

  SECTION("trivial twisting reduces to conjugation by the controlled shift") {
    for (std::size_t d : {2, 3}) {
      Rng rng(4100 + d);
      const DensityOperator sigma = random_state(target, rng);
      TwistingSpec spec;
      spec.control_dim = d;
      spec.target_layout = target;
      spec.unitaries.assign(d, ComplexMatrix::identity(4));

      const ComplexMatrix tau_full =
          kron(controlled_shift(d), ComplexMatrix::identity(4));
      ComplexMatrix plus(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) plus(i, j) = 1.0 / static_cast<double>(d);
      ComplexMatrix zero(d, d);
      zero(0, 0) = 1.0;
      const ComplexMatrix base = kron(plus, kron(zero, sigma.matrix()));
      const ComplexMatrix want = tau_full * base * tau_full.adjoint();
      REQUIRE(private_to_independent(d, spec, sigma, 'A').matrix().max_abs_diff(want) <=
              1e-13);
    }
  }

  SECTION("invalid control side is rejected") {
    Rng rng(5);
    const DensityOperator sigma = random_state(target, rng);
    const TwistingSpec spec = verify::random_twisting(2, target, rng);
    REQUIRE_THROWS_AS(private_to_independent(2, spec, sigma, 'C'), std::invalid_argument);
  }
}

TEST_CASE("twisting spec validation", "[ensembles]") {
  TwistingSpec spec;
  spec.control_dim = 2;
  spec.target_layout = SubsystemLayout{{"Ap", 2, "A"}};
  ComplexMatrix not_unitary(2, 2);
  not_unitary(0, 0) = 2.0;
  spec.unitaries = {ComplexMatrix::identity(2), not_unitary};
  REQUIRE_THROWS_AS(spec.check(), std::invalid_argument);
}

TEST_CASE("ensembles property suite", "[ensembles]") {
  for (const auto& check : verify::ensembles_suite(20240901)) {
    INFO(check.name << " " << check.detail);
    REQUIRE(check.pass);
  }
}
