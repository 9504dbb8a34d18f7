#pragma once

namespace qsimul::tol {

// Absolute tolerances, calibrated for matrices of unit max-norm scale and
// dimensions up to a few hundred in double precision.

inline constexpr double hermitian = 1e-9;
inline constexpr double projection = 1e-9;
inline constexpr double ortho = 1e-9;
inline constexpr double rank = 1e-9;
inline constexpr double unitarity = 1e-9;

// Null-space detection threshold for projection intersections.
inline constexpr double meet = 1e-7;

// Eigenvalue clustering into spectral values.
inline constexpr double cluster = 1e-8;

// Matching outcome labels across independently clustered spectra.
inline constexpr double outcome_match = 1e-6;

// Weak values: minimum |<psi_f|psi_i>|.
inline constexpr double overlap = 1e-8;

// Conditioning: minimum Pr{B=b}.
inline constexpr double condition = 1e-10;

// Residual threshold for report verdicts (commutativity, correlation,
// simultaneity checks).
inline constexpr double verdict = 1e-8;

}  // namespace qsimul::tol
