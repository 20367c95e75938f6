#pragma once

// Numeric tolerances used across the library, collected in one place so the
// contracts stay auditable. Values are absolute unless noted.

namespace deptol::tol {

// Cholesky pivot below this is treated as a failed positive-definiteness test.
inline constexpr double kCholeskyPivotMin = 1e-12;

// Allowed asymmetry |a_ij - a_ji| relative to the largest entry magnitude.
inline constexpr double kSymmetryTol = 1e-9;

// Convergence target for the regularized incomplete beta continued fraction.
inline constexpr double kIncBetaTarget = 1e-10;

// Newton/Halley refinement target for the standard normal quantile.
inline constexpr double kNormalQuantileTol = 1e-9;

// Orientation predicates: sign is zeroed when |cross| <= kOrientTol * scale,
// where scale bounds the magnitude of the exact product. Integer-representable
// coordinates produce exact cross products, so the tolerance never fires for
// them; it only absorbs rounding noise on general floating data.
inline constexpr double kOrientTol = 1e-12;

// Matching threshold when revalidating a stored mahalanobis model threshold.
inline constexpr double kThresholdRecomputeTol = 1e-12;

}  // namespace deptol::tol
