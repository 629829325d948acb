#pragma once

namespace radpair::tol {

// Relative to max|A|.
inline constexpr double kHermitian = 1e-12;

// Eigenvalues closer than this times max|value| are one level.
inline constexpr double kDegeneracy = 1e-9;

// ‖HV − VΛ‖_F / ‖H‖_F and ‖V†V − I‖_max.
inline constexpr double kEigenResidual = 1e-10;

// Levels below this overlap weight are not reported.
inline constexpr double kOverlapFloor = 1e-10;

// Yields outside [−kYieldBound, 1 + kYieldBound] are a numerical failure.
inline constexpr double kYieldBound = 1e-9;

// Denominator floor for the HMF contrast.
inline constexpr double kContrastDenominator = 1e-12;

}  // namespace radpair::tol
