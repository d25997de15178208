#pragma once

namespace privrand {

// Numerical contract, fixed for double precision and matrix sizes up to a
// few thousand.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-9;          // min eigenvalue >= -kPsdSlack
inline constexpr double kSpectrumResidualTol = 1e-8;
inline constexpr double kJacobiOffTol = 1e-12;     // off-diagonal Frobenius target
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kLogFloor = 1e-14;         // eigenvalue floor inside logs
inline constexpr double kSupportEigTol = 1e-12;    // sigma eigenvalue treated as zero
inline constexpr double kSupportWeightTol = 1e-10; // rho weight that makes zero support fatal
inline constexpr double kStrictMargin = 1e-9;      // strict inequalities need this much
inline constexpr double kEqualityTol = 1e-10;      // algebraic identities between bound forms

}  // namespace privrand
