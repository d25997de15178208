#include <catch2/catch_amalgamated.hpp>

#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/entropic.hpp"
#include "privrand/rng.hpp"
#include "privrand/verify.hpp"

using namespace privrand;
using Catch::Matchers::WithinAbs;

TEST_CASE("von Neumann entropy", "[entropic]") {
  SECTION("maximally mixed") {
    for (std::size_t d : {2, 3, 4, 8}) {
      const DensityOperator mm = maximally_mixed(SubsystemLayout{{"A", d, "A"}});
      REQUIRE_THAT(von_neumann_entropy(mm),
                   WithinAbs(std::log2(static_cast<double>(d)), 1e-12));
    }
  }

  SECTION("pure states carry no entropy") {
    REQUIRE_THAT(von_neumann_entropy(max_entangled(3)), WithinAbs(0.0, 1e-9));
  }

  SECTION("symmetric Werner at d=2") {
    REQUIRE_THAT(von_neumann_entropy(werner(WernerParams{2, 1.0})),
                 WithinAbs(std::log2(3.0), 1e-10));
  }
}

TEST_CASE("mutual information and conditional entropy", "[entropic]") {
  SECTION("maximally entangled pair carries two bits") {
    REQUIRE_THAT(mutual_information(max_entangled(2), {"A"}), WithinAbs(2.0, 1e-9));
  }

  SECTION("product states carry none") {
    Rng rng(17);
    const DensityOperator joint =
        tensor(random_state(SubsystemLayout{{"A", 2, "A"}}, rng),
               random_state(SubsystemLayout{{"B", 3, "B"}}, rng));
    REQUIRE_THAT(mutual_information(joint, {"A"}), WithinAbs(0.0, 1e-9));
  }

  SECTION("symmetric Werner value 1 + log(2/3)") {
    const double want = 1.0 + std::log2(2.0 / 3.0);
    REQUIRE_THAT(mutual_information(werner(WernerParams{2, 1.0}), {"A"}),
                 WithinAbs(want, 1e-9));
    REQUIRE_THAT(want, WithinAbs(0.41504, 1e-5));
  }

  SECTION("conditional entropy of the entangled pair is negative") {
    REQUIRE_THAT(conditional_entropy(max_entangled(2), std::vector<std::string>{"A"}),
                 WithinAbs(-1.0, 1e-9));
  }

  SECTION("bad partitions are rejected") {
    REQUIRE_THROWS_AS(mutual_information(max_entangled(2), {"A", "B"}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(mutual_information(max_entangled(2), std::vector<std::string>{}),
                      std::invalid_argument);
  }

  SECTION("report satisfies its own identity") {
    Rng rng(23);
    const DensityOperator rho =
        random_state(SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}}, rng);
    const EntropyReport r = entropy_report(rho, std::vector<std::string>{"A"});
    REQUIRE_THAT(r.I_AB, WithinAbs(r.S_A + r.S_B - r.S_AB, 1e-9));
    REQUIRE(r.S_AB >= -1e-9);
    REQUIRE(r.S_AB <= 2.0 + 1e-9);
  }
}

TEST_CASE("relative entropy", "[entropic]") {
  SECTION("vanishes on equal states") {
    Rng rng(29);
    const DensityOperator rho =
        random_state(SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}}, rng);
    REQUIRE_THAT(relative_entropy(rho, rho), WithinAbs(0.0, 1e-9));
  }

  SECTION("entangled projector against noise: log of the dimension") {
    const DensityOperator psi = max_entangled(2);
    REQUIRE_THAT(relative_entropy(psi, maximally_mixed(psi.layout())),
                 WithinAbs(2.0, 1e-9));
  }

  SECTION("support violation returns the infinite sentinel") {
    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    REQUIRE(std::isinf(relative_entropy(p0, p1)));
  }

  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(
        relative_entropy(max_entangled(2).matrix(), max_entangled(3).matrix()),
        std::invalid_argument);
  }
}

TEST_CASE("scalar entropy helpers", "[entropic]") {
  SECTION("binary entropy values") {
    REQUIRE(binary_entropy(0.5) == 1.0);
    REQUIRE(binary_entropy(0.0) == 0.0);
    REQUIRE(binary_entropy(1.0) == 0.0);
    REQUIRE_THAT(binary_entropy(0.25), WithinAbs(2.0 - 0.75 * std::log2(3.0), 1e-14));
  }

  SECTION("eta values") {
    REQUIRE(eta(0.0) == 0.0);
    REQUIRE_THAT(eta(0.125), WithinAbs(0.375, 1e-15));
  }

  SECTION("domain errors") {
    REQUIRE_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(eta(1.5), std::invalid_argument);
  }
}

TEST_CASE("global purity and localisable randomness", "[entropic]") {
  SECTION("symmetric Werner localises 2 - log 3 bits") {
    const DensityOperator rho = werner(WernerParams{2, 1.0});
    const LocalisableRandomness r = localisable_randomness(rho, "A");
    REQUIRE(r.hypothesis_standard);  // S(B|A) = log 3 - 1 > 0
    REQUIRE(r.value.has_value());
    REQUIRE_THAT(*r.value, WithinAbs(2.0 - std::log2(3.0), 1e-9));
  }

  SECTION("alpha_V localises exactly one bit for d in 3..4") {
    for (std::size_t d : {3, 4}) {
      const LocalisableRandomness r = localisable_randomness(alpha_V(d), "A");
      REQUIRE(r.hypothesis_standard);
      REQUIRE(r.value.has_value());
      REQUIRE_THAT(*r.value, WithinAbs(1.0, 1e-9));
    }
  }

  SECTION("noise holds no private randomness") {
    const DensityOperator mm =
        maximally_mixed(SubsystemLayout{{"A", 2, "A"}, {"B", 2, "B"}});
    const LocalisableRandomness r = localisable_randomness(mm, "A");
    REQUIRE(r.hypothesis_standard);
    REQUIRE_THAT(*r.value, WithinAbs(0.0, 1e-12));
  }

  SECTION("hypothesis failure yields no value") {
    // entangled pure state: S(B|A) = -1 < 0
    const LocalisableRandomness r = localisable_randomness(max_entangled(2), "A");
    REQUIRE_FALSE(r.hypothesis_standard);
    REQUIRE_FALSE(r.value.has_value());
    // both conventions evaluated and reported
    REQUIRE_THAT(r.s_rest_given_party, WithinAbs(-1.0, 1e-9));
    REQUIRE_THAT(r.s_party_given_rest, WithinAbs(-1.0, 1e-9));
  }
}

TEST_CASE("entropic property suite", "[entropic]") {
  for (const auto& check : verify::entropic_suite(20240901)) {
    INFO(check.name << " " << check.detail);
    REQUIRE(check.pass);
  }
}
