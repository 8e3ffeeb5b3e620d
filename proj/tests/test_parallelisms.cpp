#include <catch2/catch_amalgamated.hpp>

#include "spreadlab/parallelism.hpp"
#include "spreadlab/sampling.hpp"

using namespace spreadlab;

namespace {

CanonicalParallelism canon(const Profile& p, int h, bool oriented, Gamma g,
                           Placement pl = {}) {
    return canonicalize(ParallelismSpec{p, h, pl, oriented, g});
}

} // namespace

TEST_CASE("canonicalization folds the placement into the profile") {
    const auto unchanged = canon(profile_regular(1.0), +1, false, Gamma::O2);
    CHECK(unchanged.profile.a(2.0) == Catch::Approx(0.5));
    CHECK(unchanged.profile.b(2.0) == Catch::Approx(0.0).margin(1e-15));

    const auto shifted = canon(profile_regular(1.0), +1, true, Gamma::SO2, {1.0, 1.0});
    CHECK(shifted.profile.a(2.0) == Catch::Approx(0.5));
    CHECK(shifted.profile.b(2.0) == Catch::Approx(1.0).margin(1e-15));

    CHECK_THROWS_AS(canon(profile_regular(1.0), +1, false, Gamma::O2, {1.0, 1.0}),
                    NotO2Admissible);
    CHECK_THROWS_AS(canon(profile_satz2(1.0), +1, false, Gamma::O2), NotO2Admissible);
}

TEST_CASE("line rotation") {
    Rng rng(51);
    const OrientedLine l = rng.oriented_line();
    CHECK(angular_distance(rotate_line(Quaternion{1, 0, 0, 0}, l), l) < 1e-12);

    const Quaternion q = rng.unit_quaternion();
    CHECK(angular_distance(rotate_line(q, l), rotate_line(-q, l)) < 1e-12);

    // half-turn about x reverses the axis
    const Quaternion half_x{0, 1, 0, 0};
    const auto cp = canon(profile_regular(1.0), +1, true, Gamma::SO2);
    CHECK(angular_distance(rotate_line(half_x, cp.base.z_plus), reverse(cp.base.z_plus)) <
          1e-12);
}

TEST_CASE("class ids of rotations") {
    const auto cp = canon(profile_regular(1.0), +1, true, Gamma::SO2);
    CHECK(unit_angle(class_id_of_rotation(cp, {1, 0, 0, 0}).axis, {0, 0, 1}) < 1e-12);

    // quarter turn about x carries the axis to (0,-1,0)
    const double s = std::sin(M_PI / 4.0), c = std::cos(M_PI / 4.0);
    CHECK(unit_angle(class_id_of_rotation(cp, {c, s, 0, 0}).axis, {0, -1, 0}) < 1e-12);

    // z-rotations stabilize the class
    Rng rng(52);
    for (int i = 0; i < 30; ++i) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const Quaternion qz{std::cos(th / 2), 0, 0, std::sin(th / 2)};
        const Quaternion q = rng.unit_quaternion();
        CHECK(unit_angle(class_id_of_rotation(cp, q * qz).axis,
                         class_id_of_rotation(cp, q).axis) < 1e-9);
    }

    const auto left = canon(profile_regular(1.0), -1, true, Gamma::SO2);
    CHECK(unit_angle(class_id_of_rotation(left, {1, 0, 0, 0}).axis, {0, 0, -1}) < 1e-12);
}

TEST_CASE("classification is equivariant by construction") {
    Rng rng(53);
    for (const Profile& p : {profile_regular(1.0), profile_satz2(1.0)}) {
        const auto cp = canon(p, +1, true, Gamma::SO2);
        for (int i = 0; i < 40; ++i) {
            const Quaternion q = rng.unit_quaternion();
            const double r = rng.log_uniform(1e-2, 1e2);
            const double phi = rng.uniform(0.0, 2.0 * M_PI);
            const OrientedLine l = rotate_line(q, regulus_line(cp.base, r, phi));
            const ClassAssignment asg = parallel_class_of(cp, l);
            CHECK(asg.residual <= 1e-8);
            CHECK(unit_angle(asg.id.axis, class_id_of_rotation(cp, q).axis) <= 1e-8);
            CHECK(asg.radius == Catch::Approx(r).epsilon(1e-6));
        }
    }
}

TEST_CASE("classification branches for the fixed lines") {
    const auto cp = canon(profile_satz2(1.0), +1, true, Gamma::SO2);

    // axis-through-origin branch: the id is the oriented direction
    Rng rng(54);
    for (int i = 0; i < 30; ++i) {
        const Vec3 u = rng.unit_vec3();
        const ClassAssignment asg =
            parallel_class_of(cp, line_from_point_direction({0, 0, 0}, u));
        CHECK(unit_angle(asg.id.axis, u) <= 1e-9);
        CHECK(asg.residual <= 1e-9);
    }

    // reversing the axis moves it to the half-turn class, with bookkeeping
    const ClassAssignment plus = parallel_class_of(cp, cp.base.z_plus);
    CHECK(unit_angle(plus.id.axis, {0, 0, 1}) < 1e-12);
    CHECK_FALSE(plus.orientation_mismatch);
    const ClassAssignment minus = parallel_class_of(cp, reverse(cp.base.z_plus));
    CHECK(unit_angle(minus.id.axis, {0, 0, -1}) < 1e-12);
    CHECK(minus.orientation_mismatch);

    // infinite lines
    const ClassAssignment inf = parallel_class_of(cp, cp.base.v_plus);
    CHECK(unit_angle(inf.id.axis, {0, 0, 1}) < 1e-9);
    CHECK(inf.residual <= 1e-9);
    const ClassAssignment inf_rev = parallel_class_of(cp, reverse(cp.base.v_plus));
    CHECK(unit_angle(inf_rev.id.axis, {0, 0, -1}) < 1e-9);
}

TEST_CASE("classification is rotation equivariant on random lines") {
    Rng rng(55);
    const auto cp = canon(profile_satz1(0.5, 1.0), +1, true, Gamma::SO2);
    for (int i = 0; i < 60; ++i) {
        const OrientedLine l = rng.oriented_line();
        const Quaternion q = rng.unit_quaternion();
        const Vec3 expected = rotation_matrix(q) * parallel_class_of(cp, l).id.axis;
        const Vec3 got = parallel_class_of(cp, rotate_line(q, l)).id.axis;
        CHECK(unit_angle(expected, got) <= 1e-8);
    }
}

TEST_CASE("reversal always moves the class of an oriented line") {
    Rng rng(56);
    for (const Profile& p : {profile_regular(1.0), profile_satz2(1.0)}) {
        const auto cp = canon(p, +1, true, Gamma::SO2);
        for (int i = 0; i < 50; ++i) {
            const OrientedLine l = rng.oriented_line();
            const ClassAssignment a = parallel_class_of(cp, l);
            const ClassAssignment b = parallel_class_of(cp, reverse(l));
            CHECK(unit_angle(a.id.axis, b.id.axis) > 1e-6);
        }
    }
}

TEST_CASE("non-oriented concentric classification is lift independent") {
    Rng rng(57);
    const auto cp = canon(profile_satz1(0.5, 0.0), +1, false, Gamma::O2);
    for (int i = 0; i < 60; ++i) {
        const OrientedLine l = rng.oriented_line();
        const ClassAssignment a = parallel_class_of(cp, l);
        const ClassAssignment b = parallel_class_of(cp, reverse(l));
        CHECK(class_id_angle(a.id, b.id, false) <= 1e-8);
        CHECK(is_canonical_sign(a.id.axis));
    }
}

TEST_CASE("same class membership") {
    Rng rng(58);
    const auto cp = canon(profile_satz2(1.0), +1, true, Gamma::SO2);
    const OrientedLine l = rng.oriented_line();
    CHECK(same_class(cp, l, l));

    // z-rotations of the base spread stay in the identity class
    for (int i = 0; i < 20; ++i) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const OrientedLine m = regulus_line(cp.base, rng.log_uniform(1e-1, 1e1),
                                            rng.uniform(0.0, 2.0 * M_PI));
        CHECK(same_class(cp, m, rotate_line(Mat3::rotation_z(th), m)));
    }
}

TEST_CASE("class members reconstruct through points") {
    Rng rng(59);
    const auto cp = canon(profile_satz2(1.0), +1, true, Gamma::SO2);
    for (int i = 0; i < 40; ++i) {
        const OrientedLine l = rng.oriented_line();
        const ClassAssignment asg = parallel_class_of(cp, l);
        const HPoint pt = HPoint::affine(dist_point_line({0, 0, 0}, l).foot);
        const OrientedLine member = class_member_through(cp, asg.frame, pt);
        CHECK(angular_distance(member, l) <= 1e-7);
    }
}

TEST_CASE("handedness picks the Clifford side") {
    Rng rng(60);
    // right-handed centered regular spread: classes are the left-label classes
    const auto right = canon(profile_regular(1.0), +1, true, Gamma::SO2);
    const auto left = canon(profile_regular(1.0), -1, true, Gamma::SO2);
    int checked = 0;
    for (int i = 0; i < 250; ++i) {
        const OrientedLine l = rng.oriented_line();
        // same-class partner
        const ClassAssignment asg = parallel_class_of(right, l);
        const OrientedLine m = rotate_line(
            asg.frame,
            regulus_line(right.base, rng.log_uniform(1e-1, 1e1), rng.uniform(0.0, 2 * M_PI)));
        CHECK(same_class(right, l, m));
        CHECK(left_parallel(l, m, 1e-6));

        const ClassAssignment asgl = parallel_class_of(left, l);
        const OrientedLine ml = rotate_line(
            asgl.frame,
            regulus_line(left.base, rng.log_uniform(1e-1, 1e1), rng.uniform(0.0, 2 * M_PI)));
        CHECK(same_class(left, l, ml));
        CHECK(right_parallel(l, ml, 1e-6));

        // independent pair: label equality must match class membership
        const OrientedLine n = rng.oriented_line();
        CHECK(same_class(right, l, n) == left_parallel(l, n, 1e-6));
        ++checked;
    }
    CHECK(checked == 250);
}

TEST_CASE("acentric non-oriented runs fail with the axis witness") {
    for (const Profile& p : {profile_satz2(1.0), profile_satz1(0.5, 1.0)}) {
        const auto cp = canon(p, +1, false, Gamma::SO2);
        const PartitionFailureWitness w = partition_failure_witness(cp);
        CHECK(w.line == forget_orientation(cp.base.z_plus));
        CHECK(unit_angle(w.id_identity.axis, {0, 0, 1}) < 1e-12);
        CHECK(unit_angle(w.id_half_turn.axis, {0, 0, 1}) < 1e-12); // canonical sign
        CHECK(w.separation > 1e-6);
        // the conjugate member really lies in the half-turn image of the base
        const OrientedLine back = rotate_line(Mat3::rotation_x(M_PI), w.conjugate_member);
        const HPoint probe(back.is_at_infinity() ? Vec4{1, 0, 0, 0}
                                                 : Vec4{dist_point_line({0, 0, 0}, back).foot.x,
                                                        dist_point_line({0, 0, 0}, back).foot.y,
                                                        dist_point_line({0, 0, 0}, back).foot.z,
                                                        1.0});
        CHECK(angular_distance(forget_orientation(containing_line(cp.base, probe)),
                               forget_orientation(back)) < 1e-8);
    }

    CHECK_THROWS_AS(partition_failure_witness(canon(profile_satz1(0.5, 0.0), +1, false,
                                                    Gamma::O2)),
                    NotAcentric);
}

TEST_CASE("clifford comparison verdicts") {
    // centered regular spreads agree, whatever the slope scale
    for (const auto& spec :
         {ParallelismSpec{profile_regular(1.0), +1, {}, true, Gamma::SO2},
          ParallelismSpec{profile_regular(2.0), +1, {}, true, Gamma::SO2},
          ParallelismSpec{profile_regular(1.0), +1, {2.0, 0.0}, true, Gamma::SO2}}) {
        const CliffordComparison cmp = clifford_compare(canonicalize(spec), 200, 7);
        CHECK(cmp.all_agree());
        CHECK(cmp.max_label_deviation < 1e-6);
    }

    // non-regular or off-center data disagrees
    for (const auto& spec :
         {ParallelismSpec{profile_satz1(0.5, 0.0), +1, {}, true, Gamma::SO2},
          ParallelismSpec{profile_regular(1.0), +1, {1.0, 1.0}, true, Gamma::SO2}}) {
        const CliffordComparison cmp = clifford_compare(canonicalize(spec), 200, 7);
        CHECK_FALSE(cmp.all_agree());
        CHECK(cmp.disagreement.has_value());
    }
}

TEST_CASE("set distinctness of parallelisms") {
    const auto satz2_at = [](double s, double t) {
        return canon(profile_satz2(1.0), +1, true, Gamma::SO2, {s, t});
    };
    // identical construction: nothing found
    CHECK_FALSE(distinctness_witness(satz2_at(1, 0), satz2_at(1, 0), 8, 3).has_value());

    // different placements of an acentric spread give different line sets
    const auto w1 = distinctness_witness(satz2_at(1, 0), satz2_at(2, 0), 8, 3);
    REQUIRE(w1.has_value());
    CHECK(w1->separation > 1e-6);
    CHECK(w1->clearance > 1e-6);
    CHECK(distinctness_witness(satz2_at(1, 0), satz2_at(1, 1), 8, 3).has_value());

    // centered regular spreads rotated about their center all produce the
    // same construction after slope normalization
    const auto rega = canon(profile_regular(1.0), +1, false, Gamma::O2);
    const auto regb = canon(profile_regular(1.0), +1, false, Gamma::O2, {2.0, 0.0});
    CHECK_FALSE(distinctness_witness(rega, regb, 8, 3).has_value());
}

TEST_CASE("class members classify back to their class") {
    Rng rng(62);
    for (const auto& cp : {canon(profile_satz2(1.0), +1, true, Gamma::SO2),
                           canon(profile_satz1(0.25, 0.0), -1, false, Gamma::O2)}) {
        for (int i = 0; i < 8; ++i) {
            const ClassId id = canonical_class_id(rng.unit_vec3(), cp.oriented);
            for (const OrientedLine& member :
                 class_spread(cp, id, ClassGrid{log_grid(1e-1, 1e1, 3), 4})) {
                const ClassAssignment asg = parallel_class_of(cp, member);
                CHECK(class_id_angle(asg.id, id, cp.oriented) <= 1e-8);
                CHECK(asg.residual <= 1e-8);
            }
        }
    }
}

TEST_CASE("horizontal half-turn stabilizes exactly the concentric spreads") {
    Rng rng(61);
    const Mat3 half = Mat3::rotation_x(M_PI);

    const auto o2 = canon(profile_satz1(0.5, 0.0), +1, false, Gamma::O2);
    for (int i = 0; i < 40; ++i) {
        const OrientedLine l = regulus_line(o2.base, rng.log_uniform(1e-1, 1e1),
                                            rng.uniform(0.0, 2.0 * M_PI));
        const OrientedLine img = rotate_line(half, l);
        const HPoint pt = HPoint::affine(dist_point_line({0, 0, 0}, img).foot);
        CHECK(angular_distance(forget_orientation(containing_line(o2.base, pt)),
                               forget_orientation(img)) <= 1e-8);
    }

    const auto so2 = canon(profile_satz2(1.0), +1, true, Gamma::SO2);
    int moved = 0;
    for (int i = 0; i < 40; ++i) {
        const OrientedLine l = regulus_line(so2.base, rng.log_uniform(1e-1, 1e1),
                                            rng.uniform(0.0, 2.0 * M_PI));
        const OrientedLine img = rotate_line(half, l);
        const HPoint pt = HPoint::affine(dist_point_line({0, 0, 0}, img).foot);
        if (angular_distance(forget_orientation(containing_line(so2.base, pt)),
                             forget_orientation(img)) > 1e-6)
            ++moved;
    }
    CHECK(moved > 30);
}
