#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "spreadlab/profile.hpp"
#include "spreadlab/projective.hpp"
#include "spreadlab/sampling.hpp"

// A rotational spread is assembled from the reguli of the coaxial hyperboloid
// family H_r of a profile. The member at (r, phi) is the line through
// (r cos phi, r sin phi, b(r)) with direction (-sin phi, cos phi, h a(r));
// the handedness h in {+1,-1} selects the ruling, and the two choices are
// exchanged by (x,y,z) |-> (x,-y,z). The fixed lines are the axis Z and the
// infinite line V of the plane z = 0; their stored orientations are the
// limits of the regulus orientations for r -> 0 and r -> infinity.

namespace spreadlab {

struct RotationalSpread {
    Profile profile;
    int handedness = +1;
    OrientedLine z_plus;
    OrientedLine v_plus;
};

inline OrientedLine regulus_line(const RotationalSpread& s, double r, double phi) {
    const double a = s.profile.a(r), b = s.profile.b(r);
    const Vec3 p{r * std::cos(phi), r * std::sin(phi), b};
    const Vec3 d{-std::sin(phi), std::cos(phi), s.handedness * a};
    return line_from_point_direction(p, d / d.norm());
}

inline RotationalSpread make_spread(const Profile& p, int handedness) {
    if (handedness != 1 && handedness != -1)
        throw BadParameter("make_spread: handedness must be +1 or -1");
    const OrientedLine z = line_from_point_direction({0, 0, 0}, {0, 0, double(handedness)});
    RotationalSpread pre{p, handedness, z, z};
    // The regulus orientations converge to the infinite line of the plane
    // z = 0; the numeric limit fixes its sign, the exact vector is stored.
    const OrientedLine limit = regulus_line(pre, 1e8, 0.0);
    const double sign = limit[0] > 0 ? 1.0 : -1.0;
    pre.v_plus = OrientedLine::from_pluecker({sign, 0, 0, 0, 0, 0});
    return pre;
}

/// Residual of a point against the hyperboloid carrying the regulus at r.
inline double hyperboloid_residual(const RotationalSpread& s, double r, const Vec3& p) {
    const double a = s.profile.a(r), b = s.profile.b(r);
    const double dz = (p.z - b) / a;
    return p.x * p.x + p.y * p.y - dz * dz - r * r;
}

/// Handedness exchange (x,y,z) |-> (x,-y,z). Same profile.
inline RotationalSpread mirror(const RotationalSpread& s) {
    return make_spread(s.profile, -s.handedness);
}

/// Image under z |-> -z: flips handedness and the vertex heights.
inline RotationalSpread reflect_z(const RotationalSpread& s) {
    return make_spread(s.profile.with_flipped_heights(), -s.handedness);
}

/// The unique spread member through a point.
inline OrientedLine containing_line(const RotationalSpread& s, const HPoint& p) {
    const double h = double(s.handedness);

    if (p.is_at_infinity(tol::kAlgebraic)) {
        const Vec3 u{p[0], p[1], p[2]};
        const double planar = std::hypot(u.x, u.y);
        if (std::fabs(u.z) <= tol::kAlgebraic * u.norm()) return s.v_plus;
        if (planar <= tol::kAlgebraic * u.norm()) return s.z_plus;
        const double target = std::fabs(u.z) / planar;
        // slow-decay slopes push the solution far out: a = r^-w needs
        // r = target^(-1/w), so search well beyond the d-inversion range
        auto g = [&](double r) { return s.profile.a(r) - target; };
        const auto slope_brackets = detail::scan_brackets(g, 1e-18, 1e18, 1200);
        if (slope_brackets.empty())
            throw NoRoot("containing_line: direction slope not attained");
        const double r = detail::bisect_log(g, slope_brackets.front().first,
                                            slope_brackets.front().second);
        // direction must be a positive multiple of (-sin, cos, h a)
        const double sgn = (u.z * h > 0) ? 1.0 : -1.0;
        const double c1 = sgn * u.x / planar, c2 = sgn * u.y / planar;
        const double phi = std::atan2(-c1, c2);
        const OrientedLine l = regulus_line(s, r, phi);
        if (incidence_residual(l, p) > tol::kSolver)
            throw NoRoot("containing_line: infinite point not reached; profile invalid");
        return l;
    }

    const Vec3 q = p.affine_coords();
    const double rho = std::hypot(q.x, q.y);
    if (rho <= tol::kSolver * std::max(1.0, std::fabs(q.z))) return s.z_plus;

    auto f = [&](double r) {
        const double a = s.profile.a(r), b = s.profile.b(r);
        const double dz = (q.z - b) / a;
        return r * r + dz * dz - rho * rho;
    };
    const auto brackets = detail::scan_brackets(f, 1e-18, 1e18, 1200);
    if (brackets.empty()) throw NoRoot("containing_line: no radius solves the incidence");
    if (brackets.size() > 1)
        throw MultipleRoots("containing_line: " + std::to_string(brackets.size()) +
                            " radii solve the incidence; profile is not a spread");
    const double r = detail::bisect_log(f, brackets.front().first, brackets.front().second);
    const double a = s.profile.a(r), b = s.profile.b(r);
    const double t = (q.z - b) / (h * a);
    const double phi = std::atan2(q.y, q.x) - std::atan2(t, r);
    const OrientedLine l = regulus_line(s, r, phi);
    if (incidence_residual(l, p) > tol::kSolver)
        throw NoRoot("containing_line: residual above tolerance; profile invalid");
    return l;
}

// ---------------------------------------------------------------------------
// Cross-sections as graphs of 2x2 matrices: the 2-space {(v, Av) | v in W}
// in coordinates where W carries (x1, x2) and S = axis carries (x4, x3),
// affinized by the third component of (v, Av).

struct GraphMatrix {
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    double det() const { return m00 * m11 - m01 * m10; }
};

inline OrientedLine graph_line(const GraphMatrix& a) {
    if (std::fabs(a.det()) <= tol::kAlgebraic)
        throw SingularMatrix("graph_line: singular cross-section matrix");
    // spanning points for v = (1,0) and v = (0,1); Av contributes (x4, x3)
    const Vec4 p{1.0, 0.0, a.m10, a.m00};
    const Vec4 q{0.0, 1.0, a.m11, a.m01};
    return OrientedLine::from_pluecker(detail::pluecker_of(p, q));
}

inline GraphMatrix satz1_graph_matrix(double w, double c, double s) {
    if (!(s > 0.0)) throw BadParameter("satz1 cross-section requires s > 0");
    return {s, 0.0, std::pow(s, w) * c, std::pow(s, w)};
}

inline GraphMatrix satz2_graph_matrix(double d, double t) {
    const double e = std::exp(t);
    return {e, 0.0, t * e, d * e};
}

/// Angular gap between the matrix cross-section at s and the regulus line of
/// the satz1 profile at r = 1/s (as non-oriented lines).
inline double satz1_crosscheck(double w, double c, double s) {
    const OrientedLine g = graph_line(satz1_graph_matrix(w, c, s));
    const RotationalSpread sp = make_spread(profile_satz1(w, c), +1);
    const OrientedLine l = regulus_line(sp, 1.0 / s, 0.0);
    return angular_distance(forget_orientation(g), forget_orientation(l));
}

/// Same for the satz2 family at r = e^{-t}; negative d selects the mirrored
/// ruling.
inline double satz2_crosscheck(double d, double t) {
    const OrientedLine g = graph_line(satz2_graph_matrix(d, t));
    const RotationalSpread sp = make_spread(profile_satz2(d), d >= 0 ? +1 : -1);
    const OrientedLine l = regulus_line(sp, std::exp(-t), 0.0);
    return angular_distance(forget_orientation(g), forget_orientation(l));
}

// ---------------------------------------------------------------------------
// Profile validation

struct ProfileValidation {
    bool a_strictly_decreasing = false;
    bool limits_ok = false;
    bool disjoint = false;
    bool covering = false;
    bool d_injective = false;
    bool d_monotone = false; // reported, not required
    double min_branch_gap = 0.0;
    double worst_cover_residual = 0.0;
    double min_d_gap = 0.0;
    std::string failure;

    bool passed() const {
        return a_strictly_decreasing && limits_ok && disjoint && covering && d_injective;
    }
};

struct ValidationOptions {
    int r_points = 120;
    int z_points = 81;
    int cover_points = 64;
    std::uint64_t seed = 2026;
};

inline ProfileValidation validate_profile(const Profile& p,
                                          const ValidationOptions& opt = {}) {
    ProfileValidation rep;

    const auto rg = log_grid(1e-3, 1e3, opt.r_points);
    rep.a_strictly_decreasing = true;
    for (std::size_t i = 1; i < rg.size(); ++i) {
        if (!(p.a(rg[i]) < p.a(rg[i - 1]))) {
            rep.a_strictly_decreasing = false;
            rep.failure = "a not strictly decreasing near r = " + std::to_string(rg[i]);
            break;
        }
    }

    // the decay must continue beyond the working grid on both sides:
    // log-log slope at most -1e-3 across [1e-6, 1e-3] and [1e3, 1e6]
    const double lslope = std::log(p.a(1e-6) / p.a(1e-3)) / std::log(1e-6 / 1e-3);
    const double rslope = std::log(p.a(1e6) / p.a(1e3)) / std::log(1e6 / 1e3);
    rep.limits_ok = lslope <= -1e-3 && rslope <= -1e-3;
    if (!rep.limits_ok && rep.failure.empty()) rep.failure = "a(r) limits not attained";

    // pairwise disjointness of adjacent branches over a symmetric log z-grid
    std::vector<double> zg;
    zg.push_back(0.0);
    for (const double z : log_grid(1e-3, 1e3, opt.z_points / 2)) {
        zg.push_back(z);
        zg.push_back(-z);
    }
    auto branch = [&](double r, double z) {
        const double dz = (z - p.b(r)) / p.a(r);
        return std::sqrt(r * r + dz * dz);
    };
    rep.disjoint = true;
    rep.min_branch_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rg.size(); ++i) {
        for (const double z : zg) {
            const double gap = branch(rg[i], z) - branch(rg[i - 1], z);
            rep.min_branch_gap = std::min(rep.min_branch_gap, gap);
            if (!(gap > 0.0)) {
                rep.disjoint = false;
                if (rep.failure.empty())
                    rep.failure = "branches r = " + std::to_string(rg[i - 1]) + ", " +
                                  std::to_string(rg[i]) + " overlap at z = " + std::to_string(z);
            }
        }
        if (!rep.disjoint) break;
    }

    // covering: the unique-member solve succeeds on random points
    rep.covering = true;
    if (rep.a_strictly_decreasing && rep.disjoint) {
        const RotationalSpread s = make_spread(p, +1);
        for (int i = 0; i < opt.cover_points; ++i) {
            Rng rng = Rng::for_index(opt.seed, std::uint64_t(i));
            const HPoint pt = rng.projective_point();
            try {
                const OrientedLine l = containing_line(s, pt);
                rep.worst_cover_residual =
                    std::max(rep.worst_cover_residual, incidence_residual(l, pt));
            } catch (const Error& e) {
                rep.covering = false;
                if (rep.failure.empty()) rep.failure = std::string("covering: ") + e.what();
                break;
            }
        }
        if (rep.worst_cover_residual > tol::kClassification) {
            rep.covering = false;
            if (rep.failure.empty()) rep.failure = "covering residual above tolerance";
        }
    } else {
        rep.covering = false;
    }

    // injectivity (and, as a report, monotonicity) of d on the grid
    std::vector<double> dv(rg.size());
    for (std::size_t i = 0; i < rg.size(); ++i) dv[i] = d_of_r(p, rg[i]);
    rep.d_injective = true;
    rep.d_monotone = true;
    rep.min_d_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < dv.size(); ++i) {
        if (!(dv[i] > dv[i - 1])) rep.d_monotone = false;
    }
    for (std::size_t i = 0; i < dv.size(); ++i)
        for (std::size_t j = i + 1; j < dv.size(); ++j) {
            const double gap = std::fabs(dv[i] - dv[j]);
            rep.min_d_gap = std::min(rep.min_d_gap, gap);
            if (gap <= tol::kSolver) rep.d_injective = false;
        }
    if (!rep.d_injective && rep.failure.empty()) rep.failure = "d(r) not injective on the grid";

    return rep;
}

} // namespace spreadlab
