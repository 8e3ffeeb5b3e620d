#pragma once

#include <string>
#include <vector>

#include "spreadlab/parallelism.hpp"
#include "spreadlab/report.hpp"

// CSV emission for plotting. Header row always present; values at 17
// significant digits; LF line endings; identical bytes for identical
// configurations.

namespace spreadlab {

/// Hyperbola branch traces: rows (r, z, x) with x = X_r(z).
inline std::string emit_curves(const Profile& p, int r_points = 25, int z_points = 41) {
    std::string out = "r,z,x\n";
    for (const double r : log_grid(1e-1, 1e1, r_points)) {
        const double b = p.b(r), a = p.a(r);
        const double span = 4.0 * (1.0 + std::fabs(b)) * std::max(a, 1.0);
        for (int i = 0; i < z_points; ++i) {
            const double z = b - span + 2.0 * span * i / double(z_points - 1);
            const double dz = (z - b) / a;
            const double x = std::sqrt(r * r + dz * dz);
            out += format_double(r);
            out += ',';
            out += format_double(z);
            out += ',';
            out += format_double(x);
            out += '\n';
        }
    }
    return out;
}

/// Axis-distance table: rows (r, d) over a log grid.
inline std::string emit_dtable(const Profile& p, int points = 121) {
    std::string out = "r,d\n";
    for (const double r : log_grid(1e-3, 1e3, points)) {
        out += format_double(r);
        out += ',';
        out += format_double(d_of_r(p, r));
        out += '\n';
    }
    return out;
}

/// Class members over a grid of class axes: rows
/// (class_axis_x, class_axis_y, class_axis_z, p12, p13, p14, p23, p24, p34).
inline std::string emit_classes(const CanonicalParallelism& cp, int axis_points = 24) {
    std::string out = "class_axis_x,class_axis_y,class_axis_z,p12,p13,p14,p23,p24,p34\n";
    const ClassGrid grid{log_grid(1e-1, 1e1, 5), 6};
    for (int k = 0; k < axis_points; ++k) {
        // Fibonacci sphere grid of class axes
        const double t = (k + 0.5) / double(axis_points);
        const double zc = 1.0 - 2.0 * t;
        const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        const double phi = 2.0 * M_PI * std::fmod(k * 0.6180339887498949, 1.0);
        const ClassId id =
            canonical_class_id({rho * std::cos(phi), rho * std::sin(phi), zc}, cp.oriented);
        for (const OrientedLine& l : class_spread(cp, id, grid)) {
            out += format_double(id.axis.x);
            out += ',';
            out += format_double(id.axis.y);
            out += ',';
            out += format_double(id.axis.z);
            for (int i = 0; i < 6; ++i) {
                out += ',';
                out += format_double(l[i]);
            }
            out += '\n';
        }
    }
    return out;
}

} // namespace spreadlab
