#include <catch2/catch_amalgamated.hpp>

#include "spreadlab/projective.hpp"
#include "spreadlab/sampling.hpp"

using namespace spreadlab;

namespace {

const OrientedLine kZPlus = OrientedLine::from_pluecker({0, 0, 0, 0, 0, -1});

OrientedLine random_line(Rng& rng) { return rng.oriented_line(); }

} // namespace

TEST_CASE("homogeneous point normalization") {
    const HPoint p(0.0, 0.0, -3.0, 1.0);
    CHECK(p.coords().norm() == Catch::Approx(1.0).margin(1e-15));
    CHECK(p[2] > 0.0); // first significant coordinate made positive
    CHECK(p[3] < 0.0);
    CHECK(p.affine_coords().z == Catch::Approx(-3.0));
    CHECK(HPoint(1, 0, 0, 0).is_at_infinity());
    CHECK_FALSE(HPoint::affine({1, 2, 3}).is_at_infinity());
    CHECK_THROWS_AS(HPoint(0, 0, 0, 0), BadParameter);
    CHECK_THROWS_AS(HPoint(1, 0, 0, 0).affine_coords(), InfiniteLine);
}

TEST_CASE("join of frozen point pairs") {
    // origin to (0,0,1): the oriented z-axis
    const OrientedLine z = join_oriented(HPoint(0, 0, 0, 1), HPoint(0, 0, 1, 1));
    CHECK(angular_distance(z, kZPlus) < 1e-12);

    const OrientedLine l = join_oriented(HPoint(1, 0, 0, 1), HPoint(0, 1, 1, 0));
    const Pluecker expect{0.5, 0.5, 0.0, 0.0, -0.5, -0.5};
    for (int i = 0; i < 6; ++i) CHECK(l[i] == Catch::Approx(expect[i]).margin(1e-14));
    CHECK(std::fabs(quadric_form(l.pluecker())) < 1e-15);
}

TEST_CASE("join is antisymmetric and quadric-exact") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const HPoint x(rng.unit_vec4());
        const HPoint y(rng.unit_vec4());
        if (point_angle(x, y) < 1e-3) continue;
        const OrientedLine a = join_oriented(x, y);
        const OrientedLine b = join_oriented(y, x);
        CHECK(angular_distance(a, reverse(b)) < 1e-12);
        CHECK(std::fabs(quadric_form(a.pluecker())) <= 1e-12);
        CHECK(std::fabs(pluecker_norm(a.pluecker()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("degenerate join throws") {
    CHECK_THROWS_AS(join_oriented(HPoint(1, 0, 0, 1), HPoint(2, 0, 0, 2)), DegenerateJoin);
}

TEST_CASE("meet pairing detects intersection") {
    Rng rng(12);
    // self-pairing vanishes (quadric membership)
    for (int i = 0; i < 100; ++i) {
        const OrientedLine l = random_line(rng);
        CHECK(std::fabs(meet_pairing(l, l)) <= 1e-12);
    }
    // frozen skew example: z-axis against the line through (1,0,0) along (0,1,1)
    const OrientedLine l = join_oriented(HPoint(1, 0, 0, 1), HPoint(0, 1, 1, 0));
    CHECK(meet_pairing(kZPlus, l) == Catch::Approx(-0.5).margin(1e-14));
    // concurrent lines meet
    for (int i = 0; i < 100; ++i) {
        const HPoint x(rng.unit_vec4());
        const HPoint y(rng.unit_vec4());
        const HPoint z(rng.unit_vec4());
        if (point_angle(x, y) < 1e-3 || point_angle(x, z) < 1e-3) continue;
        CHECK(std::fabs(meet_pairing(join_oriented(x, y), join_oriented(x, z))) <= 1e-12);
    }
}

TEST_CASE("orientation double cover") {
    CHECK(angular_distance(reverse(kZPlus), OrientedLine::from_pluecker({0, 0, 0, 0, 0, 1})) ==
          0.0);
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const OrientedLine l = random_line(rng);
        // reversal is exact
        const OrientedLine r = reverse(l);
        for (int k = 0; k < 6; ++k) CHECK(r[k] == -l[k]);
        CHECK(reverse(r) == l);
        // both orientations forget to the same canonical line
        CHECK(forget_orientation(l) == forget_orientation(r));
        // and the section pair restores exactly the two of them
        const auto [p, m] = orientations_of(forget_orientation(l));
        const bool hits = (p == l && m == r) || (p == r && m == l);
        CHECK(hits);
        for (int k = 0; k < 6; ++k) CHECK(p[k] == -m[k]);
    }
}

TEST_CASE("line from point and direction") {
    const OrientedLine z = line_from_point_direction({0, 0, 0}, {0, 0, 1});
    CHECK(angular_distance(z, kZPlus) < 1e-12);

    const Vec3 u = Vec3{0, 1, 1} / std::sqrt(2.0);
    const OrientedLine l = line_from_point_direction({1, 0, 0}, u);
    const Pluecker expect{0.5, 0.5, 0.0, 0.0, -0.5, -0.5};
    for (int i = 0; i < 6; ++i) CHECK(l[i] == Catch::Approx(expect[i]).margin(1e-14));

    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const Vec3 p{rng.normal(), rng.normal(), rng.normal()};
        const Vec3 d = rng.unit_vec3();
        CHECK(angular_distance(line_from_point_direction(p, -d),
                               reverse(line_from_point_direction(p, d))) < 1e-12);
        CHECK(unit_angle(line_from_point_direction(p, d).direction(), d) < 1e-12);
    }
}

TEST_CASE("distance from point to line") {
    const auto axis = dist_point_line({0, 0, 0}, kZPlus);
    CHECK(axis.d == Catch::Approx(0.0).margin(1e-14));

    const OrientedLine l =
        line_from_point_direction({1, 0, 0}, Vec3{0, 1, 1} / std::sqrt(2.0));
    const auto res = dist_point_line({0, 0, 0}, l);
    CHECK(res.d == Catch::Approx(1.0).margin(1e-12));
    CHECK((res.foot - Vec3{1, 0, 0}).norm() < 1e-12);
    // the foot realizes the distance orthogonally
    CHECK(std::fabs((res.foot - Vec3{0, 0, 0}).dot(l.direction())) < 1e-12);

    // translation invariance
    Rng rng(15);
    for (int i = 0; i < 50; ++i) {
        const Vec3 c{rng.normal(), rng.normal(), rng.normal()};
        const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
        const double d0 = dist_point_line(c, l).d;
        const double d1 = dist_point_line(c + v, translate(l, v)).d;
        CHECK(d0 == Catch::Approx(d1).margin(1e-9));
    }

    CHECK_THROWS_AS(
        dist_point_line({0, 0, 0}, OrientedLine::from_pluecker({1, 0, 0, 0, 0, 0})),
        InfiniteLine);
}

TEST_CASE("collineation action") {
    Rng rng(16);
    const OrientedLine l = random_line(rng);

    CHECK(angular_distance(apply_collineation(Mat4::identity(), l), l) < 1e-12);
    CHECK(angular_distance(apply_collineation(Mat4::scalar(2.0), l), l) < 1e-12);

    // half-turn about the x-axis reverses the z-axis
    const Mat4 halfturn = Mat4::affine(Mat3::rotation_x(M_PI));
    CHECK(angular_distance(apply_collineation(halfturn, kZPlus), reverse(kZPlus)) < 1e-12);

    // functorial
    for (int i = 0; i < 50; ++i) {
        Mat4 m = Mat4::identity(), n = Mat4::identity();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                m.m[r][c] += 0.4 * rng.normal();
                n.m[r][c] += 0.4 * rng.normal();
            }
        if (std::fabs(m.det()) < 1e-3 || std::fabs(n.det()) < 1e-3) continue;
        const OrientedLine lhs = apply_collineation(m * n, l);
        const OrientedLine rhs = apply_collineation(m, apply_collineation(n, l));
        CHECK(angular_distance(lhs, rhs) < 1e-10);
        CHECK(std::fabs(quadric_form(lhs.pluecker())) <= 1e-12);
    }

    CHECK_THROWS_AS(apply_collineation(Mat4{}, l), SingularMatrix);
}

namespace {

// unnormalized second compound, for the scalar-factor identity
Pluecker raw_compound(const Mat4& m, const Pluecker& p) {
    static constexpr int I[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int J[6] = {1, 2, 3, 2, 3, 3};
    Pluecker out{};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            out[r] += (m.m[I[r]][I[c]] * m.m[J[r]][J[c]] - m.m[I[r]][J[c]] * m.m[J[r]][I[c]]) *
                      p[c];
    return out;
}

double raw_pairing(const Pluecker& p, const Pluecker& q) {
    return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[5] * q[0] - p[4] * q[1] + p[3] * q[2];
}

} // namespace

TEST_CASE("collineations scale the pairing by the determinant") {
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        Mat4 m = Mat4::identity();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m.m[r][c] += 0.4 * rng.normal();
        if (std::fabs(m.det()) < 1e-3) continue;
        const OrientedLine a = random_line(rng), b = random_line(rng);

        // the un-normalized compound scales the pairing by exactly det(m)
        const double before = meet_pairing(a, b);
        const double after = raw_pairing(raw_compound(m, a.pluecker()),
                                         raw_compound(m, b.pluecker()));
        CHECK(after == Catch::Approx(m.det() * before).margin(1e-9));

        // through the public action: vanishing and det-sign preserved
        const double mapped = meet_pairing(apply_collineation(m, a), apply_collineation(m, b));
        if (std::fabs(before) > 1e-6) {
            CHECK(mapped * before * m.det() > 0.0);
        }
        const HPoint x(rng.unit_vec4()), y(rng.unit_vec4()), z(rng.unit_vec4());
        if (point_angle(x, y) > 1e-3 && point_angle(x, z) > 1e-3) {
            const double conc = meet_pairing(apply_collineation(m, join_oriented(x, y)),
                                             apply_collineation(m, join_oriented(x, z)));
            CHECK(std::fabs(conc) <= 1e-10);
        }
    }
}

TEST_CASE("incidence residual") {
    const OrientedLine l = join_oriented(HPoint(1, 0, 0, 1), HPoint(0, 1, 1, 0));
    CHECK(incidence_residual(l, HPoint(1, 0, 0, 1)) < 1e-14);
    CHECK(incidence_residual(l, HPoint(1, 1, 1, 1)) < 1e-14); // t = 1 point
    CHECK(incidence_residual(l, HPoint(0, 0, 1, 1)) > 1e-2);
}
