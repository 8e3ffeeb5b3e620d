#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/quaternion.hpp"
#include "spreadlab/sampling.hpp"
#include "spreadlab/spread.hpp"

// Rotation-group orbits of rotational spreads.
//
// All computation happens in canonical coordinates: the placement
// xi(x,y,z) = (x,y,sz+t) that conjugates the admissible rotation group back
// to the standard SO(3) fixing the origin is folded into the profile
// (a |-> sa, b |-> sb + t), so classes are always orbits omega(C) of the
// standard rotations. A class is labeled by the image of the spread's
// oriented axis: ClassId = R(omega) * (0,0,h), a point of S^2; in the
// non-oriented case antipodal labels are identified by canonical sign.
//
// Classification of a line L rests on the orbit invariant d = dist(0, L):
// rotations act simply transitively on the frames (foot, direction) of the
// oriented lines tangent to the sphere of radius d, so the frame match
// against the reference regulus line at r(d) determines the class uniquely.

namespace spreadlab {

enum class Gamma { SO2, O2 };

inline const char* to_string(Gamma g) { return g == Gamma::SO2 ? "SO2" : "O2"; }

struct Placement {
    double s = 1.0;
    double t = 0.0;
};

struct ParallelismSpec {
    Profile profile = profile_regular(1.0);
    int handedness = +1;
    Placement placement;
    bool oriented = true;
    Gamma gamma = Gamma::SO2;
};

struct ClassId {
    Vec3 axis; // unit
};

inline bool is_canonical_sign(const Vec3& v) {
    const double comps[3] = {v.x, v.y, v.z};
    for (double c : comps) {
        if (std::fabs(c) > tol::kLineEquality) return c > 0;
    }
    return true;
}

inline ClassId canonical_class_id(const Vec3& axis, bool oriented) {
    Vec3 a = axis.normalized();
    if (!oriented && !is_canonical_sign(a)) a = -a;
    return {a};
}

inline double class_id_angle(const ClassId& a, const ClassId& b, bool oriented) {
    const double plus = unit_angle(a.axis, b.axis);
    if (oriented) return plus;
    return std::min(plus, unit_angle(a.axis, -b.axis));
}

/// Spec with the placement folded into the profile; the rotation group is
/// the standard SO(3) at the origin.
struct CanonicalParallelism {
    Profile profile;
    int handedness = +1;
    bool oriented = true;
    Gamma gamma = Gamma::SO2;
    RotationalSpread base;
};

inline double max_abs_height(const Profile& p) {
    double m = 0;
    for (const double r : default_r_grid()) m = std::max(m, std::fabs(p.b(r)));
    return m;
}

inline double height_spread(const Profile& p) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const double r : default_r_grid()) {
        const double b = p.b(r);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    return hi - lo;
}

inline CanonicalParallelism canonicalize(const ParallelismSpec& spec) {
    const Profile canon = transform_profile(spec.profile, spec.placement.s, spec.placement.t);
    if (spec.gamma == Gamma::O2 && max_abs_height(canon) > tol::kSolver)
        throw NotO2Admissible(
            "canonicalize: O(2) symmetry requires the canonical vertex height to vanish");
    return {canon, spec.handedness, spec.oriented, spec.gamma, make_spread(canon, spec.handedness)};
}

/// Rotation of line space by the orthogonal extension diag(R, 1).
inline OrientedLine rotate_line(const Mat3& r, const OrientedLine& l) {
    return apply_collineation(Mat4::affine(r), l);
}

inline OrientedLine rotate_line(const Quaternion& q, const OrientedLine& l) {
    return rotate_line(rotation_matrix(q), l);
}

inline ClassId class_id_of_rotation(const CanonicalParallelism& cp, const Quaternion& q) {
    const Vec3 axis = rotation_matrix(q) * Vec3{0, 0, double(cp.handedness)};
    return canonical_class_id(axis, cp.oriented);
}

/// Any rotation whose class has the given id.
inline Mat3 class_rotation(const CanonicalParallelism& cp, const ClassId& id) {
    return rotation_between({0, 0, double(cp.handedness)}, id.axis.normalized());
}

struct ClassGrid {
    std::vector<double> radii = log_grid(1e-2, 1e2, 17);
    int azimuths = 12;
};

/// Sampled member lines of the class with the given id.
inline std::vector<OrientedLine> class_spread(const CanonicalParallelism& cp, const ClassId& id,
                                              const ClassGrid& grid = {}) {
    const Mat3 r = class_rotation(cp, id);
    std::vector<OrientedLine> out;
    out.reserve(grid.radii.size() * grid.azimuths + 2);
    out.push_back(rotate_line(r, cp.base.z_plus));
    out.push_back(rotate_line(r, cp.base.v_plus));
    for (const double rad : grid.radii)
        for (int k = 0; k < grid.azimuths; ++k)
            out.push_back(
                rotate_line(r, regulus_line(cp.base, rad, 2.0 * M_PI * k / grid.azimuths)));
    return out;
}

struct ClassAssignment {
    ClassId id;
    double residual = 0.0;
    /// Oriented runs: set when the assigned id carries the non-canonical
    /// sign; for axis and infinite lines this says the probe is the
    /// orientation reversal of the canonical-sign class member.
    bool orientation_mismatch = false;
    Mat3 frame = Mat3::identity(); ///< a rotation realizing the class
    double radius = 0.0;           ///< regulus radius for tangent lines, else 0
};

namespace detail {

inline Vec3 infinite_line_normal(const OrientedLine& l) {
    // infinite line of the plane with normal n: Plücker (n3, -n2, 0, n1, 0, 0)
    const Pluecker& p = l.pluecker();
    return Vec3{p[3], -p[1], p[0]}.normalized();
}

} // namespace detail

/// Class of an oriented line. For non-oriented runs pass either orientation;
/// the id is antipodally canonicalized.
inline ClassAssignment parallel_class_of(const CanonicalParallelism& cp, const OrientedLine& l) {
    const double h = double(cp.handedness);
    ClassAssignment out;

    auto gap = [&](const OrientedLine& member) {
        return cp.oriented ? angular_distance(member, l)
                           : angular_distance(forget_orientation(member), forget_orientation(l));
    };

    if (l.is_at_infinity(tol::kLineEquality)) {
        // the class member at infinity is omega(V+), whose plane normal is h*id
        const Vec3 id_true = detail::infinite_line_normal(l) * h;
        const Mat3 r = rotation_between({0, 0, h}, id_true);
        out.residual = gap(rotate_line(r, cp.base.v_plus));
        if (out.residual > tol::kClassification)
            throw OrientationMismatch("parallel_class_of: infinite line not reconstructed");
        out.orientation_mismatch = cp.oriented && !is_canonical_sign(id_true);
        out.id = canonical_class_id(id_true, cp.oriented);
        out.frame = class_rotation(cp, out.id);
        return out;
    }

    const auto [d, foot] = dist_point_line({0, 0, 0}, l);

    if (d <= tol::kSolver) {
        // through the origin: the class member there is omega(Z+)
        const Vec3 id_true = l.direction();
        const Mat3 r = rotation_between({0, 0, h}, id_true);
        out.residual = gap(rotate_line(r, cp.base.z_plus));
        if (out.residual > tol::kClassification)
            throw OrientationMismatch("parallel_class_of: axis line not reconstructed");
        out.orientation_mismatch = cp.oriented && !is_canonical_sign(id_true);
        out.id = canonical_class_id(id_true, cp.oriented);
        out.frame = r;
        return out;
    }

    // tangent line: match the frame of the reference regulus line at r(d)
    const double r = r_of_d(cp.profile, d);
    const OrientedLine ref = regulus_line(cp.base, r, 0.0);
    const auto [d0, foot0] = dist_point_line({0, 0, 0}, ref);
    const Vec3 f0 = foot0 / d0, u0 = ref.direction();
    const Vec3 f = foot / d, u = l.direction();

    const Mat3 rot = Mat3::from_columns(f, u, f.cross(u)) *
                     Mat3::from_columns(f0, u0, f0.cross(u0)).transposed();
    out.residual = gap(rotate_line(rot, ref));
    if (out.residual > tol::kClassification)
        throw OrientationMismatch("parallel_class_of: tangent frame not reconstructed, residual " +
                                  std::to_string(out.residual));
    const Vec3 id_true = rot * Vec3{0, 0, h};
    out.orientation_mismatch = cp.oriented && !is_canonical_sign(id_true);
    out.id = canonical_class_id(id_true, cp.oriented);
    out.frame = rot;
    out.radius = r;
    return out;
}

inline bool same_class(const CanonicalParallelism& cp, const OrientedLine& l,
                       const OrientedLine& m) {
    const ClassAssignment a = parallel_class_of(cp, l);
    const ClassAssignment b = parallel_class_of(cp, m);
    return class_id_angle(a.id, b.id, cp.oriented) <= tol::kClassification;
}

/// Member of the class realized by `frame` through a given point: rotate the
/// point back to the base spread, solve there, rotate the line forward.
/// Well defined modulo the class stabilizer because the base spread is
/// rotation invariant about its axis.
inline OrientedLine class_member_through(const CanonicalParallelism& cp, const Mat3& frame,
                                         const HPoint& p) {
    const Mat3 inv = frame.transposed();
    const Vec4 c = p.coords();
    const Vec3 back = inv * Vec3{c[0], c[1], c[2]};
    const HPoint q(Vec4{back.x, back.y, back.z, c[3]});
    return rotate_line(frame, containing_line(cp.base, q));
}

// ---------------------------------------------------------------------------
// Witnesses

/// Evidence that rotating an acentric spread does not partition non-oriented
/// lines: the axis lies in the base spread and in its half-turn image, but
/// the two spreads differ.
struct PartitionFailureWitness {
    Line line; ///< the doubly covered line (the axis)
    ClassId id_identity;
    ClassId id_half_turn;
    OrientedLine conjugate_member; ///< member of the half-turn image absent from the base
    HPoint probe;                  ///< point exhibiting the difference
    OrientedLine base_member;      ///< base-spread member through the probe
    double separation = 0.0;

    PartitionFailureWitness(const Line& ln, const ClassId& i1, const ClassId& i2,
                            const OrientedLine& cm, const HPoint& pr, const OrientedLine& bm)
        : line(ln), id_identity(i1), id_half_turn(i2), conjugate_member(cm), probe(pr),
          base_member(bm) {}
};

inline PartitionFailureWitness partition_failure_witness(const CanonicalParallelism& cp) {
    // vanishing canonical heights: the half-turn fixes the spread and no
    // witness exists (the orbit partitions non-oriented lines). A constant
    // nonzero height still fails: the rotation misses the common center.
    if (max_abs_height(cp.profile) <= tol::kSolver)
        throw NotAcentric("partition_failure_witness: canonical heights vanish");

    const double h = double(cp.handedness);

    // radius with the largest height: there the half-turn image (heights
    // negated) visibly differs from the base spread
    double r_star = 1.0, best = -1.0;
    for (const double r : default_r_grid()) {
        const double m = std::fabs(cp.profile.b(r));
        if (m > best) {
            best = m;
            r_star = r;
        }
    }
    const RotationalSpread conj = make_spread(cp.profile.with_flipped_heights(), cp.handedness);
    const OrientedLine conj_member = regulus_line(conj, r_star, 0.0);
    const HPoint probe = HPoint::affine({r_star, 0.0, conj.profile.b(r_star)});
    const OrientedLine base_member = containing_line(cp.base, probe);

    PartitionFailureWitness w(forget_orientation(cp.base.z_plus),
                              canonical_class_id({0, 0, h}, false),
                              canonical_class_id({0, 0, -h}, false), conj_member, probe,
                              base_member);
    w.separation = angular_distance(forget_orientation(conj_member),
                                    forget_orientation(base_member));
    if (w.separation <= tol::kAcceptance)
        throw NotAcentric("partition_failure_witness: spreads coincide at the probe");
    return w;
}

// ---------------------------------------------------------------------------
// The homothety gauge
//
// The construction pins coordinates only up to the homotheties centralizing
// the rotation group; a homothety moves the quaternion Clifford structure.
// Cross-structure and cross-parallelism comparisons are therefore made in
// the normalized chart with unit slope at r = 1 (for the regular family this
// is the chart in which the orbit classes are exactly the quaternion ones).

inline Profile gauge_normalized(const Profile& p) {
    const double lambda = 1.0 / r_of_slope(p, 1.0);
    return p.with_homothety(lambda);
}

inline CanonicalParallelism gauge_normalized(const CanonicalParallelism& cp) {
    const Profile g = gauge_normalized(cp.profile);
    return {g, cp.handedness, cp.oriented, cp.gamma, make_spread(g, cp.handedness)};
}

/// The Clifford side matched by a handedness; determined during bring-up and
/// frozen: +1 pairs with the left labels, -1 with the right labels.
inline Side side_for_handedness(int h) { return h > 0 ? Side::Left : Side::Right; }

struct CliffordComparison {
    Side side = Side::Left;
    int pairs = 0;
    int agreements = 0;
    double max_label_deviation = 0.0; ///< over pairs agreeing positively
    std::optional<std::pair<OrientedLine, OrientedLine>> disagreement;

    bool all_agree() const { return agreements == pairs; }
    double agreement_fraction() const { return pairs ? double(agreements) / pairs : 1.0; }
};

/// Checks, pair by pair, that class membership coincides with equality of
/// the handedness-matched Study label. Runs in the gauge-normalized chart.
inline CliffordComparison clifford_compare(const CanonicalParallelism& cp, int samples,
                                           std::uint64_t seed) {
    const CanonicalParallelism g = gauge_normalized(cp);
    CliffordComparison rep;
    rep.side = side_for_handedness(g.handedness);

    auto side_label = [&](const OrientedLine& l) {
        const StudyPair s = study_map(l);
        return rep.side == Side::Left ? s.left : s.right;
    };
    auto record = [&](const OrientedLine& l, const OrientedLine& m) {
        const bool cls = same_class(g, l, m);
        const double dev = label_angle(side_label(l), side_label(m));
        const bool study = dev <= tol::kAcceptance;
        ++rep.pairs;
        if (cls == study) {
            ++rep.agreements;
            if (cls) rep.max_label_deviation = std::max(rep.max_label_deviation, dev);
        } else if (!rep.disagreement) {
            rep.disagreement = {l, m};
        }
    };

    const int n = std::max(1, samples / 2);
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::for_index(seed, std::uint64_t(i));

        // constructed same-class pair
        const OrientedLine l = rng.oriented_line();
        const ClassAssignment asg = parallel_class_of(g, l);
        const OrientedLine m = rotate_line(
            asg.frame, regulus_line(g.base, rng.log_uniform(1e-2, 1e2),
                                    rng.uniform(0.0, 2.0 * M_PI)));
        record(l, m);

        // independent pair
        record(rng.oriented_line(), rng.oriented_line());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Set distinctness of two parallelisms

struct DistinctnessWitness {
    OrientedLine probe; ///< common line of the two compared classes
    HPoint point;       ///< probe point where the class members part
    OrientedLine member_a;
    OrientedLine member_b;
    double separation = 0.0; ///< angular gap between the two members
    double clearance = 0.0;  ///< min gap of member_a to a dense sample of B's class

    DistinctnessWitness(const OrientedLine& pr, const HPoint& pt, const OrientedLine& ma,
                        const OrientedLine& mb)
        : probe(pr), point(pt), member_a(ma), member_b(mb) {}
};

/// Searches probe lines for one whose parallel classes in A and B differ as
/// line sets; the classes are compared through their unique members at probe
/// points and a verified clearance against a dense sample of the other
/// class. Both parallelisms are compared in the gauge-normalized chart.
inline std::optional<DistinctnessWitness> distinctness_witness(const CanonicalParallelism& a,
                                                               const CanonicalParallelism& b,
                                                               int probes, std::uint64_t seed) {
    const CanonicalParallelism ga = gauge_normalized(a);
    const CanonicalParallelism gb = gauge_normalized(b);
    const bool oriented = ga.oriented && gb.oriented;

    auto line_gap = [&](const OrientedLine& x, const OrientedLine& y) {
        return oriented ? angular_distance(x, y)
                        : angular_distance(forget_orientation(x), forget_orientation(y));
    };

    const ClassGrid dense{log_grid(1e-3, 1e3, 61), 48};

    for (int pi = 0; pi < std::max(1, probes); ++pi) {
        Rng rng = Rng::for_index(seed, std::uint64_t(pi));
        const OrientedLine probe = (pi == 0) ? ga.base.z_plus : rng.oriented_line();

        ClassAssignment asg_a, asg_b;
        try {
            asg_a = parallel_class_of(ga, probe);
            asg_b = parallel_class_of(gb, probe);
        } catch (const Error&) {
            continue;
        }

        for (int k = 0; k < 6; ++k) {
            const HPoint pt = HPoint::affine(rng.unit_vec3() * rng.log_uniform(0.3, 30.0));
            OrientedLine ma = ga.base.z_plus, mb = gb.base.z_plus;
            try {
                ma = class_member_through(ga, asg_a.frame, pt);
                mb = class_member_through(gb, asg_b.frame, pt);
            } catch (const Error&) {
                continue;
            }
            if (line_gap(ma, mb) <= tol::kAcceptance) continue;

            // verify: ma must be far from the whole sampled class of B
            double clearance = std::numeric_limits<double>::infinity();
            for (const OrientedLine& bl : class_spread(gb, asg_b.id, dense))
                clearance = std::min(clearance, line_gap(ma, bl));
            if (clearance > tol::kAcceptance) {
                DistinctnessWitness w(probe, pt, ma, mb);
                w.separation = line_gap(ma, mb);
                w.clearance = clearance;
                return w;
            }
        }
    }
    return std::nullopt;
}

} // namespace spreadlab
