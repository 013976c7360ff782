#ifndef SEQRAC_TOLERANCES_H
#define SEQRAC_TOLERANCES_H

namespace seqrac::tol {

// Structural checks on Operator2 (Hermiticity, positivity).
inline constexpr double kHermitian = 1e-9;
inline constexpr double kPositive = 1e-9;

// Bloch vectors with norm in (1, 1 + kBlochNorm] are clamped onto the sphere.
inline constexpr double kBlochNorm = 1e-9;

inline constexpr double kTrace = 1e-12;

// Instrument completeness / effect consistency.
inline constexpr double kKraus = 1e-10;

// Radicands in [-kRadicand, 0) are treated as 0.
inline constexpr double kRadicand = 1e-12;

// Certified sharpness bounds within kEtaSnap of 0 or 1 snap to the boundary;
// eta_min may exceed eta_max by kEtaSnap and still count as consistent.
inline constexpr double kEtaSnap = 1e-12;

// Golden-section refinement width in bound_b2.
inline constexpr double kGolden = 1e-10;

// Stopping tolerance of the tomography descent.
inline constexpr double kDescent = 1e-8;

}  // namespace seqrac::tol

#endif
