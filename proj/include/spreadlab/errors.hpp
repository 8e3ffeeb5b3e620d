#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// join of projectively equal points
struct DegenerateJoin : Error { using Error::Error; };
/// affine operation on a line contained in the plane at infinity
struct InfiniteLine : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
/// profile parameter outside its admissible range
struct BadParameter : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct MultipleRoots : Error { using Error::Error; };
struct NotBracketed : Error { using Error::Error; };
/// O(2) symmetry requested but the canonical vertex height is not zero
struct NotO2Admissible : Error { using Error::Error; };
/// acentric-only operation invoked on a concentric configuration
struct NotAcentric : Error { using Error::Error; };
/// oriented classification could not reconstruct the line in either orientation
struct OrientationMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace spreadlab
