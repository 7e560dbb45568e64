#pragma once

// Normative numerical constants. These are part of the library's contract:
// tests and diagnostics refer to them by name rather than repeating literals.

namespace sfa::tol {

// Default relative eigenvalue cutoff: lambda/lambda_max <= epsilon is
// treated as zero during sphering and rank decisions.
inline constexpr double kDefaultEpsilon = 1e-7;

// Pairwise orthonormality of computed eigenvectors: |v_i.v_j - delta_ij|.
inline constexpr double kOrthonormality = 1e-10;

// Eigen residual bound: ||A v - lambda v|| <= kResidual * max(1, |lambda_max|).
inline constexpr double kResidual = 1e-9;

// Negative eigenvalues of a PSD input larger than -kPsdClampRel*|lambda_max|
// are roundoff and clamped to zero.
inline constexpr double kPsdClampRel = 1e-12;

// Absolute clamp window for eigenvalues of C reported by training: [-1e-10, 0) -> 0.
inline constexpr double kEigenClampAbs = 1e-10;

// S*B*S^T must equal the identity on kept rows within this, entrywise,
// for reasonably conditioned inputs.
inline constexpr double kSpheringIdentity = 1e-8;

// Chunked vs whole-series moment accumulation must agree within this,
// relative to the largest matrix entry.
inline constexpr double kChunkInvariance = 1e-12;

// Preprocessor self-test bounds (sphere mode, applied to its own training data).
inline constexpr double kSphereMeanTol = 1e-10;
inline constexpr double kSphereCovTol = 1e-8;

// Constraint-violation thresholds for SlownessReport flags.
inline constexpr double kVarianceViolation = 1e-3;   // | <y^2> - 1 |
inline constexpr double kMeanViolation = 1e-6;       // | <y> |
inline constexpr double kNotSlowFactor = 3.0;        // eta(y1) > factor * eta(force)

}  // namespace sfa::tol
