#pragma once

namespace spreadlab::tol {

// One decade of slack between producer and consumer at each layer:
// algebraic identities -> solver targets -> classification residuals ->
// acceptance margins.
inline constexpr double kAlgebraic      = 1e-12;
inline constexpr double kSolver         = 1e-9;
inline constexpr double kClassification = 1e-8;
inline constexpr double kAcceptance     = 1e-6;

/// Angular equality threshold for lines and oriented lines.
inline constexpr double kLineEquality = 1e-9;

/// Bisection stops at this absolute interval width (or the iteration cap).
inline constexpr double kBisectionWidth = 1e-12;
inline constexpr int kBisectionMaxIter = 200;

} // namespace spreadlab::tol
