#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "spreadlab/errors.hpp"
#include "spreadlab/tolerances.hpp"
#include "spreadlab/vec.hpp"

// Line coordinates of PG(3,R).
//
// Plücker ordering is fixed once and never varied:
//
//     p = (p12, p13, p14, p23, p24, p34),   p_ij = x_i y_j - x_j y_i
//
// with the Klein quadric form  q(p) = p12*p34 - p13*p24 + p14*p23  and the
// polarized pairing
//
//     <p, q> = p12 q34 - p13 q24 + p14 q23 + p34 q12 - p24 q13 + p23 q14,
//
// which vanishes exactly when the underlying lines intersect.
//
// Oriented lines are unit quadric vectors with significant sign: negation is
// orientation reversal, and basis changes of positive determinant scale the
// vector positively, so the sign realizes the double cover of the line space.
//
// The affine space R^3 sits in PG(3,R) through (x,y,z) |-> (x,y,z,1).

namespace spreadlab {

using Pluecker = std::array<double, 6>;

inline double quadric_form(const Pluecker& p) {
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
}

inline double pluecker_dot(const Pluecker& a, const Pluecker& b) {
    double s = 0;
    for (int i = 0; i < 6; ++i) s += a[i] * b[i];
    return s;
}

inline double pluecker_norm(const Pluecker& p) { return std::sqrt(pluecker_dot(p, p)); }

/// Points of PG(3,R), stored as unit 4-vectors with the first coordinate of
/// significant magnitude made positive.
class HPoint {
public:
    explicit HPoint(const Vec4& coords) : c_(coords) {
        const double n = c_.norm();
        if (!(n > 0.0)) throw BadParameter("HPoint: zero coordinate vector");
        c_ = c_ / n;
        for (int i = 0; i < 4; ++i) {
            if (std::fabs(c_[i]) > tol::kAlgebraic) {
                if (c_[i] < 0) c_ = -c_;
                break;
            }
        }
    }

    HPoint(double x1, double x2, double x3, double x4) : HPoint(Vec4{x1, x2, x3, x4}) {}

    static HPoint affine(const Vec3& p) { return HPoint(Vec4{p.x, p.y, p.z, 1.0}); }
    static HPoint at_infinity(const Vec3& dir) { return HPoint(Vec4{dir.x, dir.y, dir.z, 0.0}); }

    const Vec4& coords() const { return c_; }
    double operator[](std::size_t i) const { return c_[i]; }

    bool is_at_infinity(double eps = tol::kSolver) const { return std::fabs(c_[3]) <= eps; }

    /// Affine coordinates; only valid off the plane at infinity.
    Vec3 affine_coords() const {
        if (is_at_infinity(tol::kAlgebraic))
            throw InfiniteLine("HPoint: point at infinity has no affine coordinates");
        return {c_[0] / c_[3], c_[1] / c_[3], c_[2] / c_[3]};
    }

private:
    Vec4 c_;
};

inline double point_angle(const HPoint& a, const HPoint& b) {
    const Vec4 d = a.coords() - b.coords();
    const Vec4 s = a.coords() + b.coords();
    const double c = std::min(d.norm(), s.norm());
    return 2.0 * std::asin(std::min(1.0, 0.5 * c));
}

namespace detail {

inline Pluecker pluecker_of(const Vec4& x, const Vec4& y) {
    return {x[0] * y[1] - x[1] * y[0], x[0] * y[2] - x[2] * y[0], x[0] * y[3] - x[3] * y[0],
            x[1] * y[2] - x[2] * y[1], x[1] * y[3] - x[3] * y[1], x[2] * y[3] - x[3] * y[2]};
}

} // namespace detail

class Line;
class OrientedLine;
inline std::pair<OrientedLine, OrientedLine> orientations_of(const Line& m);

/// A line of PG(3,R) together with an orientation of its 2-dimensional
/// subspace of R^4. Unit Plücker vector; the sign is the orientation.
class OrientedLine {
public:
    /// Normalizes (positively) and enforces quadric membership.
    static OrientedLine from_pluecker(const Pluecker& raw) {
        const double n = pluecker_norm(raw);
        if (!(n > 0.0)) throw BadParameter("OrientedLine: zero Plücker vector");
        Pluecker p;
        for (int i = 0; i < 6; ++i) p[i] = raw[i] / n;
        const double res = std::fabs(quadric_form(p));
        if (res > tol::kAlgebraic)
            throw BadParameter("OrientedLine: quadric residual " + std::to_string(res));
        return OrientedLine(p);
    }

    const Pluecker& pluecker() const { return p_; }
    double operator[](std::size_t i) const { return p_[i]; }

    /// Direction part (u1,u2,u3) of the affine line; zero for lines at infinity.
    Vec3 direction_part() const { return {-p_[2], -p_[4], -p_[5]}; }

    bool is_at_infinity(double eps = tol::kSolver) const {
        return direction_part().norm() <= eps;
    }

    /// Oriented unit direction of an affine line.
    Vec3 direction() const {
        const Vec3 d = direction_part();
        const double n = d.norm();
        if (n <= tol::kAlgebraic)
            throw InfiniteLine("OrientedLine: line at infinity has no direction");
        return d / n;
    }

    /// Moment m = p x u for any affine point p on the line (same scale as the
    /// stored Plücker vector).
    Vec3 moment_part() const { return {p_[3], -p_[1], p_[0]}; }

    friend bool operator==(const OrientedLine& a, const OrientedLine& b) {
        return a.p_ == b.p_;
    }

private:
    explicit OrientedLine(const Pluecker& p) : p_(p) {}
    Pluecker p_;
    friend OrientedLine reverse(const OrientedLine&);
    friend class Line;
    friend std::pair<OrientedLine, OrientedLine> orientations_of(const Line&);
};

/// Orientation reversal. Exact: componentwise negation.
inline OrientedLine reverse(const OrientedLine& l) {
    Pluecker q;
    for (int i = 0; i < 6; ++i) q[i] = -l.pluecker()[i];
    return OrientedLine(q);
}

/// Non-oriented line: canonical sign makes equality testable. The first
/// coordinate of magnitude above 1e-12 is made positive.
class Line {
public:
    explicit Line(const OrientedLine& l) : p_(l.pluecker()) {
        for (int i = 0; i < 6; ++i) {
            if (std::fabs(p_[i]) > tol::kAlgebraic) {
                if (p_[i] < 0)
                    for (int j = 0; j < 6; ++j) p_[j] = -p_[j];
                break;
            }
        }
    }

    const Pluecker& pluecker() const { return p_; }

    friend bool operator==(const Line& a, const Line& b) { return a.p_ == b.p_; }

private:
    Pluecker p_;
};

inline Line forget_orientation(const OrientedLine& l) { return Line(l); }

/// The two orientations of a line; they differ exactly by global sign. The
/// stored vector is already unit and on the quadric, so no renormalization
/// happens and the round trip with forget_orientation is exact.
inline std::pair<OrientedLine, OrientedLine> orientations_of(const Line& m) {
    const OrientedLine plus(m.pluecker());
    return {plus, reverse(plus)};
}

/// Oriented angular distance (sign-sensitive), chord-based for stability at
/// small separations.
inline double angular_distance(const OrientedLine& a, const OrientedLine& b) {
    double c2 = 0;
    for (int i = 0; i < 6; ++i) {
        const double d = a[i] - b[i];
        c2 += d * d;
    }
    return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(c2)));
}

/// Angular distance between non-oriented lines (minimum over signs).
inline double angular_distance(const Line& a, const Line& b) {
    double cm = 0, cp = 0;
    for (int i = 0; i < 6; ++i) {
        const double d = a.pluecker()[i] - b.pluecker()[i];
        const double s = a.pluecker()[i] + b.pluecker()[i];
        cm += d * d;
        cp += s * s;
    }
    return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(std::min(cm, cp))));
}

/// Polarity pairing of the Klein quadric; zero iff the lines intersect.
inline double meet_pairing(const OrientedLine& p, const OrientedLine& q) {
    return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[5] * q[0] - p[4] * q[1] + p[3] * q[2];
}

/// Oriented join: swapping the arguments negates the result.
inline OrientedLine join_oriented(const HPoint& x, const HPoint& y) {
    if (point_angle(x, y) <= tol::kLineEquality)
        throw DegenerateJoin("join_oriented: projectively equal points");
    return OrientedLine::from_pluecker(detail::pluecker_of(x.coords(), y.coords()));
}

/// Oriented affine line through p with unit direction u; the orientation
/// points along u. Works on the raw representatives (p,1) and (u,0): the
/// sign canonicalization of HPoint would flip the orientation.
inline OrientedLine line_from_point_direction(const Vec3& p, const Vec3& u) {
    return OrientedLine::from_pluecker(
        detail::pluecker_of({p.x, p.y, p.z, 1.0}, {u.x, u.y, u.z, 0.0}));
}

/// Residual of incidence between a line and a point (both unit-normalized);
/// zero iff the point lies on the line.
inline double incidence_residual(const OrientedLine& l, const HPoint& x) {
    const Pluecker& p = l.pluecker();
    const Vec4& c = x.coords();
    const double g1 = -p[5] * c[1] + p[4] * c[2] - p[3] * c[3];
    const double g2 = p[5] * c[0] - p[2] * c[2] + p[1] * c[3];
    const double g3 = -p[4] * c[0] + p[2] * c[1] - p[0] * c[3];
    const double g4 = p[3] * c[0] - p[1] * c[1] + p[0] * c[2];
    return std::sqrt(g1 * g1 + g2 * g2 + g3 * g3 + g4 * g4);
}

struct PointLineDistance {
    double d = 0.0;
    Vec3 foot; ///< closest point of the line
};

/// Euclidean distance from an affine point to an affine line.
inline PointLineDistance dist_point_line(const Vec3& c, const OrientedLine& l) {
    const Vec3 dp = l.direction_part();
    const double dn = dp.norm();
    if (dn <= tol::kAlgebraic)
        throw InfiniteLine("dist_point_line: line lies in the plane at infinity");
    const Vec3 u = dp / dn;
    // point on the line closest to the origin: u x m / |d|^2 in the raw scale
    const Vec3 m = l.moment_part();
    const Vec3 p0 = u.cross(m) / dn;
    const Vec3 w = c - p0;
    const Vec3 foot = p0 + u * w.dot(u);
    return {(c - foot).norm(), foot};
}

/// Action of PGL(4,R) on oriented lines through the second compound matrix,
/// renormalized with the positive scale factor.
inline OrientedLine apply_collineation(const Mat4& m, const OrientedLine& l) {
    if (std::fabs(m.det()) <= tol::kAlgebraic)
        throw SingularMatrix("apply_collineation: |det| below tolerance");
    static constexpr int I[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int J[6] = {1, 2, 3, 2, 3, 3};
    Pluecker out{};
    for (int r = 0; r < 6; ++r) {
        const int i = I[r], j = J[r];
        double s = 0;
        for (int cidx = 0; cidx < 6; ++cidx) {
            const int k = I[cidx], lq = J[cidx];
            const double c2 = m.m[i][k] * m.m[j][lq] - m.m[i][lq] * m.m[j][k];
            s += c2 * l.pluecker()[cidx];
        }
        out[r] = s;
    }
    return OrientedLine::from_pluecker(out);
}

inline OrientedLine translate(const OrientedLine& l, const Vec3& v) {
    return apply_collineation(Mat4::affine(Mat3::identity(), v), l);
}

} // namespace spreadlab
