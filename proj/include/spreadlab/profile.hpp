#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "spreadlab/errors.hpp"
#include "spreadlab/tolerances.hpp"

// A coaxial family of one-sheeted hyperboloids is described by two functions
// of the vertex radius r > 0: the upper asymptote slope a(r) > 0 and the
// vertex height b(r). The half-plane trace of the hyperboloid H_r is
//
//     X_r(z) = sqrt(r^2 + (z - b(r))^2 / a(r)^2).
//
// For a spread, a must be strictly decreasing with a -> infinity at 0 and
// a -> 0 at infinity. Closed forms provided:
//
//     regular(d):   a = d/r,      b = 0
//     satz1(w, c):  a = r^-w,     b = c r^(1-w),   w in (0,1)
//     satz2(d):     a = |d|/r,    b = -ln r,       |d| >= 1/2
//
// plus tabulated profiles (monotone cubic in log r). Every profile carries an
// affine post-transform (s, t): a |-> s a, b |-> s b + t, the image of the
// family under (x,y,z) |-> (x,y,sz+t).

namespace spreadlab {

enum class ProfileKind { Regular, Satz1, Satz2, Table };

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Regular: return "regular";
        case ProfileKind::Satz1: return "satz1";
        case ProfileKind::Satz2: return "satz2";
        case ProfileKind::Table: return "table";
    }
    return "?";
}

namespace detail {

/// Fritsch-Carlson monotone cubic interpolant with linear extrapolation.
struct Pchip {
    std::vector<double> x, y, d; // knots, values, endpoint-adjusted slopes

    void build(std::vector<double> xs, std::vector<double> ys) {
        x = std::move(xs);
        y = std::move(ys);
        const std::size_t n = x.size();
        d.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        d[0] = delta[0];
        d[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
                const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
    }

    double eval(double xq) const {
        const std::size_t n = x.size();
        if (xq <= x.front()) return y.front() + d.front() * (xq - x.front());
        if (xq >= x.back()) return y.back() + d.back() * (xq - x.back());
        std::size_t lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x[mid] <= xq ? lo : hi) = mid;
        }
        const double h = x[lo + 1] - x[lo];
        const double t = (xq - x[lo]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return y[lo] * (2 * t3 - 3 * t2 + 1) + h * d[lo] * (t3 - 2 * t2 + t) +
               y[lo + 1] * (-2 * t3 + 3 * t2) + h * d[lo + 1] * (t3 - t2);
    }
};

struct ProfileTable {
    Pchip log_a; // log a against log r
    Pchip height; // b against log r
};

} // namespace detail

class Profile {
public:
    double a(double r) const { return scale_ * base_a(r / rho_); }
    double b(double r) const { return beta_ * base_b(r / rho_) + shift_; }

    ProfileKind kind() const { return kind_; }
    double param_d() const { return d_; }
    double param_w() const { return w_; }
    double param_c() const { return c_; }
    double scale() const { return scale_; }
    double shift() const { return shift_; }
    bool heights_flipped() const { return beta_ < 0.0; }
    const std::shared_ptr<const detail::ProfileTable>& table() const { return table_; }

    Profile with_transform(double s, double t) const {
        if (!(s > 0.0)) throw BadParameter("transform_profile: scale must be positive");
        Profile p = *this;
        p.scale_ = scale_ * s;
        p.beta_ = beta_ * s;
        p.shift_ = shift_ * s + t;
        return p;
    }

    /// b |-> -b, the height part of the reflection z |-> -z.
    Profile with_flipped_heights() const {
        Profile p = *this;
        p.beta_ = -beta_;
        p.shift_ = -shift_;
        return p;
    }

    /// Image of the family under the homothety (x,y,z) |-> (lambda x,
    /// lambda y, lambda z): a'(r) = a(r/lambda), b'(r) = lambda b(r/lambda).
    Profile with_homothety(double lambda) const {
        if (!(lambda > 0.0)) throw BadParameter("with_homothety: scale must be positive");
        Profile p = *this;
        p.rho_ = rho_ * lambda;
        p.beta_ = beta_ * lambda;
        p.shift_ = shift_ * lambda;
        return p;
    }

    double radial_scale() const { return rho_; }

    friend Profile profile_regular(double d);
    friend Profile profile_satz1(double w, double c);
    friend Profile profile_satz2(double d);
    friend Profile profile_table(const std::vector<double>& r, const std::vector<double>& a,
                                 const std::vector<double>& b);

private:
    Profile() = default;

    double base_a(double r) const {
        switch (kind_) {
            case ProfileKind::Regular: return d_ / r;
            case ProfileKind::Satz1: return std::pow(r, -w_);
            case ProfileKind::Satz2: return std::fabs(d_) / r;
            case ProfileKind::Table: return std::exp(table_->log_a.eval(std::log(r)));
        }
        return 0.0;
    }

    double base_b(double r) const {
        switch (kind_) {
            case ProfileKind::Regular: return 0.0;
            case ProfileKind::Satz1: return c_ * std::pow(r, 1.0 - w_);
            case ProfileKind::Satz2: return -std::log(r);
            case ProfileKind::Table: return table_->height.eval(std::log(r));
        }
        return 0.0;
    }

    ProfileKind kind_ = ProfileKind::Regular;
    double d_ = 1.0, w_ = 0.5, c_ = 0.0;
    double scale_ = 1.0, beta_ = 1.0, shift_ = 0.0, rho_ = 1.0;
    std::shared_ptr<const detail::ProfileTable> table_;
};

inline Profile profile_regular(double d) {
    if (!(d > 0.0)) throw BadParameter("regular profile requires d > 0");
    Profile p;
    p.kind_ = ProfileKind::Regular;
    p.d_ = d;
    return p;
}

inline Profile profile_satz1(double w, double c) {
    if (!(w > 0.0 && w < 1.0)) throw BadParameter("satz1 profile requires w in (0,1)");
    Profile p;
    p.kind_ = ProfileKind::Satz1;
    p.w_ = w;
    p.c_ = c;
    return p;
}

inline Profile profile_satz2(double d) {
    if (!(std::fabs(d) >= 0.5)) throw BadParameter("satz2 profile requires |d| >= 1/2");
    Profile p;
    p.kind_ = ProfileKind::Satz2;
    p.d_ = d;
    return p;
}

inline Profile profile_table(const std::vector<double>& r, const std::vector<double>& a,
                             const std::vector<double>& b) {
    if (r.size() < 4 || r.size() != a.size() || r.size() != b.size())
        throw BadParameter("table profile requires >= 4 aligned samples");
    std::vector<double> lr(r.size()), la(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(a[i] > 0.0))
            throw BadParameter("table profile requires positive r and a samples");
        if (i > 0 && !(r[i] > r[i - 1]))
            throw BadParameter("table profile requires strictly increasing r");
        lr[i] = std::log(r[i]);
        la[i] = std::log(a[i]);
    }
    auto tbl = std::make_shared<detail::ProfileTable>();
    tbl->log_a.build(lr, la);
    tbl->height.build(lr, b);
    Profile p;
    p.kind_ = ProfileKind::Table;
    p.table_ = std::move(tbl);
    return p;
}

/// Image of the hyperboloid family under (x,y,z) |-> (x,y,sz+t).
inline Profile transform_profile(const Profile& p, double s, double t) {
    return p.with_transform(s, t);
}

/// Distance from the axis frame origin to the closest point of H_r:
/// minimum of sqrt(x^2 + z^2) over the branch, attained at z = b/(1+a^2).
inline double d_of_r(const Profile& p, double r) {
    const double a = p.a(r), b = p.b(r);
    return std::sqrt(r * r + b * b / (1.0 + a * a));
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / double(n - 1));
    return g;
}

namespace detail {

/// Bracketed bisection of a continuous function on a log-spaced scan of
/// [lo, hi]; reports all sign changes found on the scan.
template <class F>
inline std::vector<std::pair<double, double>> scan_brackets(F&& f, double lo, double hi, int n) {
    std::vector<std::pair<double, double>> out;
    double prev_r = lo, prev_v = f(lo);
    const double step = std::pow(hi / lo, 1.0 / (n - 1));
    double r = lo;
    for (int i = 1; i < n; ++i) {
        r *= step;
        const double v = f(r);
        if (prev_v == 0.0) out.emplace_back(prev_r, prev_r);
        else if (v == 0.0) out.emplace_back(r, r);
        else if ((prev_v < 0) != (v < 0)) out.emplace_back(prev_r, r);
        prev_r = r;
        prev_v = v;
    }
    return out;
}

/// Bisection in log r: interval width 1e-12 in the log variable gives
/// uniform relative precision across the working range [1e-9, 1e9], which
/// the steep small-radius regimes need.
template <class F>
inline double bisect_log(F&& f, double lo, double hi) {
    if (lo == hi) return lo;
    double ulo = std::log(lo), uhi = std::log(hi);
    double flo = f(lo);
    for (int i = 0; i < tol::kBisectionMaxIter && (uhi - ulo) > tol::kBisectionWidth; ++i) {
        const double umid = 0.5 * (ulo + uhi);
        const double fm = f(std::exp(umid));
        if (fm == 0.0) return std::exp(umid);
        if ((flo < 0) == (fm < 0)) {
            ulo = umid;
            flo = fm;
        } else {
            uhi = umid;
        }
    }
    return std::exp(0.5 * (ulo + uhi));
}

} // namespace detail

/// Inverse of d_of_r by bracketing and bisection on [1e-9, 1e9].
inline double r_of_d(const Profile& p, double d) {
    if (!(d > 0.0)) throw BadParameter("r_of_d requires d > 0");
    auto f = [&](double r) { return d_of_r(p, r) - d; };
    const auto brackets = detail::scan_brackets(f, 1e-9, 1e9, 600);
    if (brackets.empty())
        throw NotBracketed("r_of_d: no sign change on [1e-9, 1e9]; profile invalid for this d");
    return detail::bisect_log(f, brackets.front().first, brackets.front().second);
}

/// Unique radius with a(r) = target (a is strictly decreasing for valid
/// profiles).
inline double r_of_slope(const Profile& p, double target) {
    if (!(target > 0.0)) throw BadParameter("r_of_slope requires a positive slope");
    auto f = [&](double r) { return p.a(r) - target; };
    const auto brackets = detail::scan_brackets(f, 1e-9, 1e9, 600);
    if (brackets.empty()) throw NoRoot("r_of_slope: target slope not attained on [1e-9, 1e9]");
    return detail::bisect_log(f, brackets.front().first, brackets.front().second);
}

inline std::vector<double> default_r_grid() { return log_grid(1e-3, 1e3, 121); }

inline bool is_concentric(const Profile& p, const std::vector<double>& grid = default_r_grid()) {
    double lo = p.b(grid.front()), hi = lo;
    for (const double r : grid) {
        const double b = p.b(r);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    return (hi - lo) <= tol::kSolver;
}

inline bool is_regular(const Profile& p, const std::vector<double>& grid = default_r_grid()) {
    if (!is_concentric(p, grid)) return false;
    double mean = 0;
    for (const double r : grid) mean += r * p.a(r);
    mean /= double(grid.size());
    double var = 0;
    for (const double r : grid) {
        const double d = r * p.a(r) - mean;
        var += d * d;
    }
    return std::sqrt(var / double(grid.size())) <= tol::kSolver;
}

} // namespace spreadlab
