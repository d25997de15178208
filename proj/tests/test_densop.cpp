#include <catch2/catch_amalgamated.hpp>

#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/rng.hpp"
#include "privrand/verify.hpp"

#include "oracles.hpp"

using namespace privrand;
using Catch::Matchers::WithinAbs;

namespace {
DensityOperator symmetric_werner_d2() { return werner(WernerParams{2, 1.0}); }
}  // namespace

TEST_CASE("tensor products", "[densop]") {
  const SubsystemLayout la{{"A", 2, "A"}};
  const SubsystemLayout lb{{"B", 2, "B"}};

  SECTION("identity halves combine to I/4") {
    const DensityOperator t = tensor(maximally_mixed(la), maximally_mixed(lb));
    REQUIRE(t.dim() == 4);
    REQUIRE(t.matrix().max_abs_diff(ComplexMatrix::identity(4) * cplx(0.25, 0.0)) == 0.0);
  }

  SECTION("basis projectors") {
    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const DensityOperator t =
        tensor(DensityOperator(p0, la), DensityOperator(p1, lb));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        REQUIRE(t.matrix()(i, j) == (i == 1 && j == 1 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
  }

  SECTION("symmetric Werner pair has unit trace and dimension 16") {
    const DensityOperator ws = symmetric_werner_d2();
    const DensityOperator ws2 =
        tensor(ws, ws.with_layout(SubsystemLayout{{"C", 2, "C"}, {"D", 2, "B"}}));
    REQUIRE(ws2.dim() == 16);
    REQUIRE_THAT(ws2.matrix().trace().real(), WithinAbs(1.0, 1e-12));
  }

  SECTION("label collision is rejected") {
    REQUIRE_THROWS_AS(tensor(maximally_mixed(la), maximally_mixed(la)), std::invalid_argument);
  }
}

TEST_CASE("partial trace", "[densop]") {
  SECTION("maximally entangled marginal is maximally mixed") {
    const DensityOperator psi = max_entangled(2);
    const DensityOperator a = partial_trace(psi, {"B"});
    REQUIRE(a.matrix().max_abs_diff(ComplexMatrix::identity(2) * cplx(0.5, 0.0)) <= 1e-15);
  }

  SECTION("product state marginal recovers the factor") {
    Rng rng(11);
    const DensityOperator ra = random_state(SubsystemLayout{{"A", 3, "A"}}, rng);
    const DensityOperator rb = random_state(SubsystemLayout{{"B", 2, "B"}}, rng);
    const DensityOperator joint = tensor(ra, rb);
    REQUIRE(partial_trace(joint, {"B"}).matrix().max_abs_diff(ra.matrix()) <= 1e-14);
    REQUIRE(partial_trace(joint, {"A"}).matrix().max_abs_diff(rb.matrix()) <= 1e-14);
  }

  SECTION("alpha_V marginal spectrum") {
    // frozen via the brute-force oracle below: {3/8, 3/8, 1/8, 1/8}
    const DensityOperator av = alpha_V(2);
    const DensityOperator marg = partial_trace(av, {"Bp"});
    const Spectrum s = eig_values(marg.matrix());
    REQUIRE_THAT(s.eigenvalues[0], WithinAbs(0.375, 1e-12));
    REQUIRE_THAT(s.eigenvalues[1], WithinAbs(0.375, 1e-12));
    REQUIRE_THAT(s.eigenvalues[2], WithinAbs(0.125, 1e-12));
    REQUIRE_THAT(s.eigenvalues[3], WithinAbs(0.125, 1e-12));

    const ComplexMatrix ref =
        oracle::partial_trace(av.matrix(), {2, 2, 2}, {false, false, true});
    REQUIRE(marg.matrix().max_abs_diff(ref) <= 1e-15);
  }

  SECTION("agrees with the brute-force oracle on random states") {
    const SubsystemLayout l{{"A", 2, "A"}, {"B", 3, "B"}, {"C", 2, "C"}};
    for (std::uint64_t k = 0; k < 6; ++k) {
      Rng rng(900 + k);
      const DensityOperator rho = random_state(l, rng);
      const DensityOperator lib = partial_trace(rho, {"B"});
      const ComplexMatrix ref =
          oracle::partial_trace(rho.matrix(), {2, 3, 2}, {false, true, false});
      REQUIRE(lib.matrix().max_abs_diff(ref) <= 1e-14);
    }
  }

  SECTION("unknown label is rejected") {
    REQUIRE_THROWS_AS(partial_trace(max_entangled(2), {"Q"}), std::invalid_argument);
  }
}

TEST_CASE("partial transposition", "[densop]") {
  SECTION("swap operator transposes to the entangled projector") {
    for (std::size_t d : {2, 3}) {
      const SubsystemLayout l{{"A", d, "A"}, {"B", d, "B"}};
      const ComplexMatrix vg =
          partial_transpose_matrix(swap_operator(d), l, std::vector<std::string>{"B"});
      const ComplexMatrix want =
          max_entangled(d).matrix() * cplx(static_cast<double>(d), 0.0);
      REQUIRE(vg.max_abs_diff(want) == 0.0);
    }
  }

  SECTION("maximally mixed is a fixed point") {
    const DensityOperator mm = maximally_mixed(SubsystemLayout{{"A", 3, "A"}, {"B", 3, "B"}});
    REQUIRE(partial_transpose(mm, {"B"}).max_abs_diff(mm.matrix()) == 0.0);
  }

  SECTION("involution is exact and matches the oracle") {
    const SubsystemLayout l{{"A", 2, "A"}, {"B", 2, "B"}, {"C", 3, "C"}};
    for (std::uint64_t k = 0; k < 6; ++k) {
      Rng rng(700 + k);
      const DensityOperator rho = random_state(l, rng);
      const ComplexMatrix g = partial_transpose(rho, {"B", "C"});
      const ComplexMatrix ref =
          oracle::partial_transpose(rho.matrix(), {2, 2, 3}, {false, true, true});
      REQUIRE(g.max_abs_diff(ref) == 0.0);
      const ComplexMatrix gg =
          partial_transpose_matrix(g, l, std::vector<std::string>{"B", "C"});
      REQUIRE(gg.max_abs_diff(rho.matrix()) == 0.0);
    }
  }

  SECTION("unknown label is rejected") {
    REQUIRE_THROWS_AS(partial_transpose(max_entangled(2), {"Q"}), std::invalid_argument);
  }
}

TEST_CASE("hermitian eigendecomposition", "[densop]") {
  SECTION("maximally mixed spectrum") {
    const Spectrum s = eig_hermitian(ComplexMatrix::identity(4) * cplx(0.25, 0.0));
    for (double v : s.eigenvalues) REQUIRE_THAT(v, WithinAbs(0.25, 1e-14));
    REQUIRE(s.residual <= 1e-12);
  }

  SECTION("symmetric Werner spectrum: symmetric subspace of dimension 3") {
    const Spectrum s = eig_hermitian(symmetric_werner_d2().matrix());
    REQUIRE_THAT(s.eigenvalues[0], WithinAbs(1.0 / 3.0, 1e-12));
    REQUIRE_THAT(s.eigenvalues[1], WithinAbs(1.0 / 3.0, 1e-12));
    REQUIRE_THAT(s.eigenvalues[2], WithinAbs(1.0 / 3.0, 1e-12));
    REQUIRE_THAT(s.eigenvalues[3], WithinAbs(0.0, 1e-12));
    REQUIRE(s.residual <= 1e-8);
  }

  SECTION("transposed symmetric Werner spectrum") {
    const ComplexMatrix g = partial_transpose(symmetric_werner_d2(), {"B"});
    const Spectrum s = eig_hermitian(g);
    REQUIRE_THAT(s.eigenvalues[0], WithinAbs(0.5, 1e-12));
    for (int i = 1; i < 4; ++i) REQUIRE_THAT(s.eigenvalues[i], WithinAbs(1.0 / 6.0, 1e-12));
  }

  SECTION("non-Hermitian input is rejected") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    REQUIRE_THROWS_AS(eig_hermitian(m), std::invalid_argument);
  }

  SECTION("eigenvalues of density operators sum to one") {
    Rng rng(42);
    const DensityOperator rho =
        random_state(SubsystemLayout{{"A", 2, "A"}, {"B", 3, "B"}}, rng);
    REQUIRE_THAT(eig_hermitian(rho.matrix()).sum(), WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("trace norm", "[densop]") {
  SECTION("any density operator has trace norm one") {
    Rng rng(5);
    const DensityOperator rho =
        random_state(SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}}, rng);
    REQUIRE_THAT(trace_norm(rho.matrix()), WithinAbs(1.0, 1e-10));
  }

  SECTION("distance of the entangled projector from noise") {
    // eigenvalues {3/4, -1/4 x3}
    const ComplexMatrix diff =
        max_entangled(2).matrix() - ComplexMatrix::identity(4) * cplx(0.25, 0.0);
    REQUIRE_THAT(trace_norm(diff), WithinAbs(1.5, 1e-12));
  }

  SECTION("transposed alpha_V distance from noise is 1/d at d=2") {
    const DensityOperator av = alpha_V(2);
    const ComplexMatrix g = partial_transpose(av, {"Bp"});
    const ComplexMatrix diff = g - ComplexMatrix::identity(8) * cplx(1.0 / 8.0, 0.0);
    REQUIRE_THAT(trace_norm(diff), WithinAbs(0.5, 1e-12));
  }

  SECTION("non-Hermitian input is rejected") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    REQUIRE_THROWS_AS(trace_norm(m), std::invalid_argument);
  }
}

TEST_CASE("ppt test", "[densop]") {
  SECTION("separable Werner is PPT") {
    REQUIRE(is_ppt(werner(WernerParams{2, 0.0}), {"B"}).ppt);
  }

  SECTION("maximally entangled state is NPT with eigenvalue -1/2") {
    const PptResult r = is_ppt(max_entangled(2), {"B"});
    REQUIRE_FALSE(r.ppt);
    REQUIRE_THAT(r.min_eigenvalue, WithinAbs(-0.5, 1e-12));
  }

  SECTION("alpha_V is NPT across the party cut") {
    // transposing Bob's register exposes the negative eigenvalue -(d-1)/(2d^2)
    for (std::size_t d : {2, 3, 4}) {
      const PptResult r = is_ppt(alpha_V(d), {"Bp"});
      REQUIRE_FALSE(r.ppt);
      const double want = -(static_cast<double>(d) - 1.0) / (2.0 * d * d);
      REQUIRE_THAT(r.min_eigenvalue, WithinAbs(want, 1e-12));
    }
  }
}

TEST_CASE("densop property suite", "[densop]") {
  for (const auto& check : verify::densop_suite(20240901)) {
    INFO(check.name << " " << check.detail);
    REQUIRE(check.pass);
  }
}
