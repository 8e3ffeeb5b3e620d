#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace spreadlab {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Chord-based angle between unit vectors; stable for tiny angles where
/// acos of a dot product loses all precision.
inline double unit_angle(const Vec3& a, const Vec3& b) {
    const double c = (a - b).norm();
    return 2.0 * std::asin(std::min(1.0, 0.5 * c));
}

struct Vec4 {
    std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};

    constexpr Vec4() = default;
    constexpr Vec4(double a, double b, double c, double d) : v{a, b, c, d} {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec4 operator+(const Vec4& o) const {
        return {v[0] + o[0], v[1] + o[1], v[2] + o[2], v[3] + o[3]};
    }
    Vec4 operator-(const Vec4& o) const {
        return {v[0] - o[0], v[1] - o[1], v[2] - o[2], v[3] - o[3]};
    }
    Vec4 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s, v[3] * s}; }
    Vec4 operator/(double s) const { return {v[0] / s, v[1] / s, v[2] / s, v[3] / s}; }
    Vec4 operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }

    double dot(const Vec4& o) const {
        return v[0] * o[0] + v[1] * o[1] + v[2] * o[2] + v[3] * o[3];
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec4 normalized() const { return *this / norm(); }
};

struct Mat3 {
    // row-major
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        r.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        return r;
    }

    /// Columns given as vectors.
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m = {{{c0.x, c1.x, c2.x}, {c0.y, c1.y, c2.y}, {c0.z, c1.z, c2.z}}};
        return r;
    }

    static Mat3 rotation_z(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        Mat3 r;
        r.m = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
        return r;
    }

    static Mat3 rotation_x(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        Mat3 r;
        r.m = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }
};

/// Shortest-arc rotation carrying unit vector `from` onto unit vector `to`.
/// Antipodal input falls back to a half-turn about any perpendicular axis.
inline Mat3 rotation_between(const Vec3& from, const Vec3& to) {
    const double c = from.dot(to);
    if (c > 1.0 - 1e-14) return Mat3::identity();
    if (c < -1.0 + 1e-14) {
        // pick the coordinate axis least aligned with `from`
        Vec3 e{1, 0, 0};
        if (std::fabs(from.y) < std::fabs(from.x)) e = {0, 1, 0};
        if (std::fabs(from.z) < std::fabs(std::fabs(from.y) < std::fabs(from.x) ? from.y : from.x))
            e = {0, 0, 1};
        const Vec3 a = from.cross(e).normalized();
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = -((i == j) ? 1.0 : 0.0);
        const double av[3] = {a.x, a.y, a.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] += 2.0 * av[i] * av[j];
        return r;
    }
    const Vec3 w = from.cross(to);
    const double k = 1.0 / (1.0 + c);
    Mat3 r = Mat3::identity();
    const double wx[3] = {w.x, w.y, w.z};
    // R = I + [w]x + [w]x^2 / (1 + c)
    Mat3 sk;
    sk.m = {{{0, -wx[2], wx[1]}, {wx[2], 0, -wx[0]}, {-wx[1], wx[0], 0}}};
    const Mat3 sk2 = sk * sk;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] += sk.m[i][j] + sk2.m[i][j] * k;
    return r;
}

struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }

    static Mat4 scalar(double s) {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = s;
        return r;
    }

    /// Affine map of R^3 embedded as x4 = 1: linear part A, translation t.
    static Mat4 affine(const Mat3& a, const Vec3& t = {}) {
        Mat4 r = identity();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j];
        r.m[0][3] = t.x;
        r.m[1][3] = t.y;
        r.m[2][3] = t.z;
        return r;
    }

    Vec4 operator*(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i) {
            double s = 0;
            for (int j = 0; j < 4; ++j) s += m[i][j] * v[j];
            r[i] = s;
        }
        return r;
    }

    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    double det() const {
        auto d3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
            return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
                   m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
                   m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
        };
        return m[0][0] * d3(1, 2, 3, 1, 2, 3) - m[0][1] * d3(1, 2, 3, 0, 2, 3) +
               m[0][2] * d3(1, 2, 3, 0, 1, 3) - m[0][3] * d3(1, 2, 3, 0, 1, 2);
    }
};

} // namespace spreadlab
