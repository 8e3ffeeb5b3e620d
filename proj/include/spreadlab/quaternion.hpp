#pragma once

#include <cmath>
#include <utility>

#include "spreadlab/projective.hpp"
#include "spreadlab/vec.hpp"

// Quaternion model of R^4: the coordinates (x1,x2,x3,x4) of a point are
// identified with w + x i + y j + z k componentwise (e1 <-> 1, e2 <-> i,
// e3 <-> j, e4 <-> k).
//
// An oriented line L with oriented orthonormal basis (u, v) carries the two
// sphere labels
//
//     left(L)  = u* v,      right(L) = v u*        (* = conjugation),
//
// both pure unit quaternions, independent of the basis chosen within the
// orientation. left is constant on orbits of q |-> aq and right on orbits of
// q |-> qb, so equality of a label is exactly oriented Clifford parallelism
// on that side.

namespace spreadlab {

struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion from_coords(const Vec4& c) { return {c[0], c[1], c[2], c[3]}; }
    Vec4 coords() const { return {w, x, y, z}; }

    static Quaternion from_vector(const Vec3& v) { return {0.0, v.x, v.y, v.z}; }
    Vec3 vector() const { return {x, y, z}; }

    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quaternion normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    constexpr Quaternion operator*(const Quaternion& q) const {
        return {w * q.w - x * q.x - y * q.y - z * q.z,
                w * q.x + x * q.w + y * q.z - z * q.y,
                w * q.y - x * q.z + y * q.w + z * q.x,
                w * q.z + x * q.y - y * q.x + z * q.w};
    }
    constexpr Quaternion operator+(const Quaternion& q) const {
        return {w + q.w, x + q.x, y + q.y, z + q.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
};

inline constexpr Quaternion kOne{1, 0, 0, 0};
inline constexpr Quaternion kI{0, 1, 0, 0};
inline constexpr Quaternion kJ{0, 0, 1, 0};
inline constexpr Quaternion kK{0, 0, 0, 1};

/// Rotation matrix of the conjugation action v |-> q v q* on pure quaternions.
inline Mat3 rotation_matrix(const Quaternion& qq) {
    const Quaternion q = qq.normalized();
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Mat3 r;
    r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
    return r;
}

/// Matrix of x |-> a x on R^4 (columns are a * e_i).
inline Mat4 left_mult_matrix(const Quaternion& a) {
    const Quaternion cols[4] = {a * kOne, a * kI, a * kJ, a * kK};
    Mat4 m;
    for (int c = 0; c < 4; ++c) {
        const Vec4 v = cols[c].coords();
        for (int r = 0; r < 4; ++r) m.m[r][c] = v[r];
    }
    return m;
}

/// Matrix of x |-> x b on R^4.
inline Mat4 right_mult_matrix(const Quaternion& b) {
    const Quaternion cols[4] = {kOne * b, kI * b, kJ * b, kK * b};
    Mat4 m;
    for (int c = 0; c < 4; ++c) {
        const Vec4 v = cols[c].coords();
        for (int r = 0; r < 4; ++r) m.m[r][c] = v[r];
    }
    return m;
}

/// An oriented orthonormal basis (u, v) of the 2-space of L, with
/// join_oriented(u, v) = L including the sign.
inline std::pair<Vec4, Vec4> oriented_basis(const OrientedLine& l) {
    const Pluecker& p = l.pluecker();
    // antisymmetric Plücker matrix; its column space is the 2-space of L
    double P[4][4] = {{0, p[0], p[1], p[2]},
                      {-p[0], 0, p[3], p[4]},
                      {-p[1], -p[3], 0, p[5]},
                      {-p[2], -p[4], -p[5], 0}};
    auto col = [&](int j) { return Vec4{P[0][j], P[1][j], P[2][j], P[3][j]}; };

    int best = 0;
    double best_n = -1;
    for (int j = 0; j < 4; ++j) {
        const double n = col(j).norm();
        if (n > best_n) {
            best_n = n;
            best = j;
        }
    }
    Vec4 u = col(best).normalized();

    double second_n = -1;
    Vec4 vraw;
    for (int j = 0; j < 4; ++j) {
        if (j == best) continue;
        const Vec4 c = col(j);
        const Vec4 res = c - u * c.dot(u);
        const double n = res.norm();
        if (n > second_n) {
            second_n = n;
            vraw = res;
        }
    }
    Vec4 v = vraw.normalized();

    // Fix the orientation against the sign of L by negating v; negation (and
    // not a swap) keeps the reversal law study(-L) = -study(L) exact in
    // floating point.
    const Pluecker j = detail::pluecker_of(u, v);
    if (pluecker_dot(j, p) < 0) v = -v;
    return {u, v};
}

/// The pair of Clifford class labels of an oriented line; both components
/// pure unit quaternions (points of S^2).
struct StudyPair {
    Quaternion left;
    Quaternion right;
};

inline StudyPair study_map(const OrientedLine& l) {
    const auto [u, v] = oriented_basis(l);
    const Quaternion qu = Quaternion::from_coords(u);
    const Quaternion qv = Quaternion::from_coords(v);
    return {qu.conjugate() * qv, qv * qu.conjugate()};
}

inline double label_angle(const Quaternion& a, const Quaternion& b) {
    return unit_angle(a.vector(), b.vector());
}

inline bool left_parallel(const OrientedLine& l, const OrientedLine& m,
                          double eps = tol::kLineEquality) {
    return label_angle(study_map(l).left, study_map(m).left) <= eps;
}

inline bool right_parallel(const OrientedLine& l, const OrientedLine& m,
                           double eps = tol::kLineEquality) {
    return label_angle(study_map(l).right, study_map(m).right) <= eps;
}

enum class Side { Left, Right };

/// Image of L under x |-> a x (left) or x |-> x a (right), |a| = 1.
inline OrientedLine clifford_orbit(const OrientedLine& l, const Quaternion& a, Side side) {
    const Mat4 m = (side == Side::Left) ? left_mult_matrix(a.normalized())
                                        : right_mult_matrix(a.normalized());
    return apply_collineation(m, l);
}

/// Inverse of the label map: the unique oriented line with the given pair of
/// labels. Solves u l u* = r for a unit u, then spans (u, u l).
inline OrientedLine line_from_study(const StudyPair& s) {
    const Vec3 lv = s.left.vector().normalized();
    const Vec3 rv = s.right.vector().normalized();
    const double c = lv.dot(rv);
    Quaternion u;
    if (c < -1.0 + 1e-14) {
        Vec3 e{1, 0, 0};
        if (std::fabs(lv.y) < std::fabs(lv.x)) e = {0, 1, 0};
        const Vec3 axis = lv.cross(e).normalized();
        u = Quaternion::from_vector(axis); // half-turn
    } else {
        // half-angle rotation taking lv to rv
        const Vec3 axis = lv.cross(rv);
        u = Quaternion{1.0 + c, axis.x, axis.y, axis.z}.normalized();
    }
    const Quaternion v = u * Quaternion::from_vector(lv);
    // raw join: HPoint sign canonicalization would corrupt the orientation
    return OrientedLine::from_pluecker(detail::pluecker_of(u.coords(), v.coords()));
}

} // namespace spreadlab
