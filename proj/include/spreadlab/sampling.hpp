#pragma once

#include <cmath>
#include <cstdint>

#include "spreadlab/projective.hpp"
#include "spreadlab/quaternion.hpp"

// Deterministic sampling. The generator state is a single 64-bit word
// (splitmix64), so per-sample streams can be derived from (seed, index) and
// results do not depend on worker count or evaluation order.

namespace spreadlab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for one sample index of a seeded sweep.
    static Rng for_index(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed + 0x9E3779B97F4A7C15ull * (index + 1));
        r.next();
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    /// standard normal (Box-Muller)
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec3 unit_vec3() {
        while (true) {
            const Vec3 v{normal(), normal(), normal()};
            const double n = v.norm();
            if (n > 1e-6) return v / n;
        }
    }

    Vec4 unit_vec4() {
        while (true) {
            const Vec4 v{normal(), normal(), normal(), normal()};
            const double n = v.norm();
            if (n > 1e-6) return v / n;
        }
    }

    Quaternion unit_quaternion() { return Quaternion::from_coords(unit_vec4()); }

    /// Uniform on oriented-line space: join of two independent uniform S^3
    /// points, rejecting near-degenerate pairs.
    OrientedLine oriented_line() {
        while (true) {
            const Vec4 x = unit_vec4();
            const Vec4 y = unit_vec4();
            const Pluecker p = detail::pluecker_of(x, y);
            if (pluecker_norm(p) > 1e-3) return OrientedLine::from_pluecker(p);
        }
    }

    /// Random projective point mixing affine points across scales with axis
    /// and infinite points.
    HPoint projective_point() {
        const double pick = uniform();
        if (pick < 0.05) return HPoint(0.0, 0.0, uniform(-10.0, 10.0), uniform() < 0.5 ? 1.0 : 0.0);
        if (pick < 0.10) {
            const Vec3 u = unit_vec3();
            return HPoint::at_infinity(u);
        }
        const double scale = log_uniform(1e-2, 1e2);
        return HPoint::affine(Vec3{normal(), normal(), normal()} * scale);
    }

private:
    std::uint64_t state_;
};

} // namespace spreadlab
