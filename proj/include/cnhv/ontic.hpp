// The generalized Bell hidden-variable model for a qubit pair.
//
// The ontic state is (psi, lambda~) with lambda~ uniform on the unit
// sphere. Outcomes are deterministic threshold rules on spherical caps:
//
//     x = +1  iff  a_hat . lambda~ >= cos(xi),   cos(xi)  = -<x(a)>_psi,
//     y = +1  iff  b     . lambda~ >= cos(chi),  cos(chi) = -<y(b)>_psi,
//
// where a_hat = a_hat(a, b) is an effective direction in the plane of a
// and b, solved numerically so the model's joint correlation matches the
// quantum one. Averaging the unobservable azimuth mu at fixed polar
// angle tau yields the intermediate-level averages f(a, tau), g(b, tau);
// averaging those over tau recovers the quantum marginals.
//
// Polar angles are measured from the +y axis (the propagation
// direction); settings conventionally lie in the x-z plane.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cnhv/errors.hpp"
#include "cnhv/parallel.hpp"
#include "cnhv/quadrature.hpp"
#include "cnhv/quantum.hpp"
#include "cnhv/rng.hpp"
#include "cnhv/vec3.hpp"

namespace cnhv {

/// Cap apertures xi (x side) and chi (y side) for a given (state, a, b).
struct thresholds {
    double xi;
    double chi;
};

inline thresholds thresholds_for(const two_qubit_state& st, const setting& a, const setting& b)
{
    return {std::acos(clamp_unit(-marginal_x(st, a))), std::acos(clamp_unit(-marginal_y(st, b)))};
}

/// Deterministic x outcome; the cap boundary belongs to +1.
inline int outcome_x(const vec3& a_hat, const vec3& lambda_tilde, double xi)
{
    return dot(a_hat, lambda_tilde) >= std::cos(xi) ? +1 : -1;
}

/// Deterministic y outcome; uses the raw setting b, not an effective one.
inline int outcome_y(const vec3& b, const vec3& lambda_tilde, double chi)
{
    return dot(b, lambda_tilde) >= std::cos(chi) ? +1 : -1;
}

/// Marginal density of the polar angle for a uniform sphere direction.
inline double rho_tau(double tau)
{
    if (!(tau >= 0.0 && tau <= pi)) throw std::domain_error("polar angle tau must lie in [0, pi]");
    return 0.5 * std::sin(tau);
}

namespace detail {

// sin^2(tau) below this is treated as a pole of the latitude circle.
inline constexpr double pole_sin2_eps = 1e-30;

// Intermediate-level average of the x outcome at fixed tau, as a
// function of the quantum marginal m = <x(a)>_psi. Outside the support
// |tau - pi/2| <= xi the average is -1; at the poles the clamped form
// gives -1 as well.
inline double intermediate_average(double m, double tau)
{
    const double xi = std::acos(clamp_unit(-m));
    if (std::abs(tau - 0.5 * pi) > xi) return -1.0;
    const double s2 = std::sin(tau) * std::sin(tau);
    if (s2 < pole_sin2_eps) return -1.0;
    const double u = clamp_unit(2.0 * m * m / s2 - 1.0);
    return std::acos(u) / pi - 1.0;
}

inline void check_tau(double tau)
{
    if (!(tau >= 0.0 && tau <= pi)) throw std::domain_error("polar angle tau must lie in [0, pi]");
}

// Half-width (in azimuth) of the arc of the latitude circle at polar
// angle tau on which dot(u, lambda) >= cos_thresh. Full circle -> pi,
// empty -> 0.
inline double plus_arc_halfwidth(const vec3& u, double cos_thresh, double tau)
{
    const double base = std::cos(tau) * u.y;
    const double amp = std::sin(tau) * std::hypot(u.x, u.z);
    if (amp <= 1e-15) return base >= cos_thresh ? pi : 0.0;
    const double t = (cos_thresh - base) / amp;
    if (t >= 1.0) return 0.0;
    if (t <= -1.0) return pi;
    return std::acos(t);
}

// Overlap length of two circular arcs with center separation d in
// [0, pi] and half-widths wa, wb in [0, pi].
inline double arc_overlap(double d, double wa, double wb)
{
    auto seg = [](double lo1, double hi1, double lo2, double hi2) {
        const double lo = std::max(lo1, lo2);
        const double hi = std::min(hi1, hi2);
        return hi > lo ? hi - lo : 0.0;
    };
    return seg(-wa, wa, d - wb, d + wb) + seg(-wa, wa, d - 2.0 * pi - wb, d - 2.0 * pi + wb);
}

// E[x*y | tau]: exact average of the outcome product over the azimuth.
inline double pair_correlation_at_tau(const vec3& a_hat, const vec3& b, const thresholds& th, double tau)
{
    const double wa = plus_arc_halfwidth(a_hat, std::cos(th.xi), tau);
    const double wb = plus_arc_halfwidth(b, std::cos(th.chi), tau);
    double d = 0.0;
    if (std::hypot(a_hat.x, a_hat.z) > 1e-15 && std::hypot(b.x, b.z) > 1e-15) {
        d = std::abs(std::atan2(a_hat.z, a_hat.x) - std::atan2(b.z, b.x));
        if (d > pi) d = 2.0 * pi - d;
    }
    const double p_pp = arc_overlap(d, wa, wb) / (2.0 * pi);
    return 1.0 - 2.0 * (wa / pi) - 2.0 * (wb / pi) + 4.0 * p_pp;
}

// tau values where an arc transitions between partial and full/empty:
// sin(tau) = |cos(aperture)|.
inline void append_arc_breakpoints(std::vector<double>& pts, double aperture)
{
    const double s = std::min(1.0, std::abs(std::cos(aperture)));
    const double t = std::asin(s);
    if (t > 0.0 && t < pi) pts.push_back(t);
    if (pi - t > 0.0 && pi - t < pi) pts.push_back(pi - t);
}

inline std::vector<double> sorted_breakpoints(std::vector<double> pts)
{
    pts.push_back(0.0);
    pts.push_back(pi);
    std::sort(pts.begin(), pts.end());
    return pts;
}

} // namespace detail

/// f(a, tau): azimuth average of the x outcome at fixed polar angle.
inline double intermediate_f(const two_qubit_state& st, const setting& a, double tau)
{
    detail::check_tau(tau);
    return detail::intermediate_average(marginal_x(st, a), tau);
}

/// g(b, tau): azimuth average of the y outcome at fixed polar angle.
inline double intermediate_g(const two_qubit_state& st, const setting& b, double tau)
{
    detail::check_tau(tau);
    return detail::intermediate_average(marginal_y(st, b), tau);
}

/// Breakpoints of the support of the intermediate average for aperture
/// xi, suitable as initial quadrature segments over [0, pi].
inline std::vector<double> intermediate_support_breakpoints(double xi)
{
    std::vector<double> pts;
    const double lo = 0.5 * pi - xi;
    const double hi = 0.5 * pi + xi;
    if (lo > 0.0 && lo < pi) pts.push_back(lo);
    if (hi > 0.0 && hi < pi) pts.push_back(hi);
    return detail::sorted_breakpoints(std::move(pts));
}

/// Model joint correlation E[x*y] for outcome caps around a_hat and b
/// with the given apertures, integrating the exact azimuth average over
/// tau. Throws quadrature_error if the tolerance cannot be met.
inline double model_joint_correlation(const vec3& a_hat, const setting& b, const thresholds& th,
                                      const quad_options& opt = {})
{
    auto integrand = [&](double tau) {
        return detail::pair_correlation_at_tau(a_hat, b, th, tau) * 0.5 * std::sin(tau);
    };
    std::vector<double> pts;
    detail::append_arc_breakpoints(pts, th.xi);
    detail::append_arc_breakpoints(pts, th.chi);
    return integrate_segmented(integrand, detail::sorted_breakpoints(std::move(pts)), opt).value;
}

struct mc_estimate {
    double mean;
    double std_error;
    std::uint64_t n;
};

namespace detail {

inline mc_estimate pm1_estimate(double sum, std::uint64_t n)
{
    const double mean = sum / static_cast<double>(n);
    double se = std::numeric_limits<double>::infinity();
    if (n > 1) {
        const double var = std::max(0.0, 1.0 - mean * mean);
        se = std::sqrt(var / static_cast<double>(n - 1));
    }
    return {mean, se, n};
}

} // namespace detail

/// Monte Carlo counterpart of model_joint_correlation: sample mean of
/// x*y over n uniform sphere directions, with its standard error.
/// Sample i draws from the counter stream (seed, i); results are
/// independent of the thread count.
inline mc_estimate model_joint_correlation_mc(const vec3& a_hat, const setting& b, const thresholds& th,
                                              std::uint64_t n, std::uint64_t seed, unsigned threads = 0)
{
    if (n == 0) throw std::invalid_argument("sample count must be at least 1");
    const double cxi = std::cos(th.xi);
    const double cchi = std::cos(th.chi);
    const vec3 bv = b.vec();
    const auto sum = chunked_accumulate<1>(
        n,
        [&](std::uint64_t i, std::array<double, 1>& acc) {
            counter_rng rng(seed, i);
            const vec3 lam = sample_unit_sphere(rng);
            const double x = dot(a_hat, lam) >= cxi ? 1.0 : -1.0;
            const double y = dot(bv, lam) >= cchi ? 1.0 : -1.0;
            acc[0] += x * y;
        },
        threads);
    return detail::pm1_estimate(sum[0], n);
}

/// Effective x-side direction returned by the solver: the rotation of a
/// toward b (angle alpha, in the plane of a and b) whose model joint
/// correlation matches the quantum one, with the achieved residual.
struct effective_setting {
    vec3 a_hat;
    double residual;
    double alpha;
};

inline constexpr double default_solver_tol = 1e-10;

namespace detail {

// In-plane direction orthogonal to a that spans the rotation plane:
// the component of b orthogonal to a when the pair is independent, else
// a direction in the x-z plane (the settings' plane) orthogonal to a.
inline vec3 rotation_frame_e2(const vec3& a, const vec3& b)
{
    const vec3 perp = b - dot(a, b) * a;
    if (norm(perp) > 1e-9) return normalized(perp);
    vec3 alt = cross(vec3{0.0, 1.0, 0.0}, a);
    if (norm(alt) < 1e-9) alt = cross(vec3{1.0, 0.0, 0.0}, a);
    return normalized(alt);
}

} // namespace detail

/// Solve for the effective setting a_hat(a, b): find the rotation angle
/// alpha in [-pi, pi] with the smallest |alpha| (ties: smaller alpha)
/// whose model correlation matches joint_correlation(st, a, b) within
/// tol. Throws no_root_error if no angle achieves the tolerance.
inline effective_setting solve_a_hat(const two_qubit_state& st, const setting& a, const setting& b,
                                     double tol = default_solver_tol)
{
    if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    const double target = joint_correlation(st, a, b);
    const thresholds th = thresholds_for(st, a, b);
    const vec3 e2 = detail::rotation_frame_e2(a.vec(), b.vec());

    auto direction = [&](double alpha) { return std::cos(alpha) * a.vec() + std::sin(alpha) * e2; };

    quad_options qopt;
    qopt.abs_tol = std::max(tol * 1e-2, 1e-13);
    auto residual_at = [&](double alpha) {
        return model_joint_correlation(direction(alpha), b, th, qopt) - target;
    };

    constexpr int grid_n = 181; // alpha = 0 exactly at the center
    std::vector<double> alpha(grid_n), fval(grid_n);
    for (int k = 0; k < grid_n; ++k) {
        alpha[k] = static_cast<double>(k - grid_n / 2) * (pi / (grid_n / 2));
        fval[k] = residual_at(alpha[k]);
    }

    std::vector<double> roots;
    for (int k = 0; k < grid_n; ++k)
        if (std::abs(fval[k]) <= tol) roots.push_back(alpha[k]);

    // refine sign changes by bisection
    for (int k = 0; k + 1 < grid_n; ++k) {
        if (fval[k] == 0.0 || fval[k] * fval[k + 1] >= 0.0) continue;
        double lo = alpha[k], hi = alpha[k + 1];
        double flo = fval[k];
        double root = 0.5 * (lo + hi);
        for (int it = 0; it < 80; ++it) {
            root = 0.5 * (lo + hi);
            const double fm = residual_at(root);
            if (std::abs(fm) <= tol || hi - lo < 1e-14) break;
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = root;
                flo = fm;
            } else {
                hi = root;
            }
        }
        if (std::abs(residual_at(root)) <= tol) roots.push_back(root);
    }

    // tangential roots: golden-section search around local minima of |f|
    constexpr double golden = 0.6180339887498949;
    for (int k = 1; k + 1 < grid_n; ++k) {
        const double m = std::abs(fval[k]);
        if (m <= tol || m > 0.05) continue;
        if (m >= std::abs(fval[k - 1]) || m > std::abs(fval[k + 1])) continue;
        double lo = alpha[k - 1], hi = alpha[k + 1];
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = std::abs(residual_at(x1)), f2 = std::abs(residual_at(x2));
        for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = std::abs(residual_at(x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = std::abs(residual_at(x2));
            }
        }
        const double xm = f1 <= f2 ? x1 : x2;
        if (std::abs(residual_at(xm)) <= tol) roots.push_back(xm);
    }

    if (roots.empty())
        throw no_root_error("no effective setting matches the quantum correlation (theta = " +
                            std::to_string(st.theta()) + ", target E = " + std::to_string(target) + ")");

    std::sort(roots.begin(), roots.end(), [](double p, double q) {
        const double ap = std::abs(p), aq = std::abs(q);
        return ap != aq ? ap < aq : p < q;
    });
    const double best = roots.front();
    return {direction(best), std::abs(residual_at(best)), best};
}

/// Monte Carlo average of the x outcome over the azimuth at fixed tau,
/// using the solved effective setting for (st, a, b). Its mean depends
/// on b only through a_hat's direction, which drops out of the full-
/// circle average; comparing runs with different b is the numerical
/// non-signalling check.
inline mc_estimate mc_conditional_average_x(const two_qubit_state& st, const setting& a, const setting& b,
                                            double tau, std::uint64_t n, std::uint64_t seed,
                                            unsigned threads = 0)
{
    detail::check_tau(tau);
    if (n == 0) throw std::invalid_argument("sample count must be at least 1");
    const thresholds th = thresholds_for(st, a, b);
    const effective_setting eff = solve_a_hat(st, a, b);
    const double cxi = std::cos(th.xi);
    const auto sum = chunked_accumulate<1>(
        n,
        [&](std::uint64_t i, std::array<double, 1>& acc) {
            counter_rng rng(seed, i);
            const double mu = rng.next_double(0.0, 2.0 * pi);
            const vec3 lam = from_spherical(mu, tau);
            acc[0] += dot(eff.a_hat, lam) >= cxi ? 1.0 : -1.0;
        },
        threads);
    return detail::pm1_estimate(sum[0], n);
}

/// Quantum-recovery check: integral of f(a, tau) against rho(tau)
/// compared with the quantum marginal <x(a)>_psi.
struct recovery_report {
    double integral;
    double quantum_marginal;
    double abs_diff;
};

inline recovery_report verify_quantum_recovery(const two_qubit_state& st, const setting& a,
                                               double quad_tol = 1e-8)
{
    const double m = marginal_x(st, a);
    const double xi = std::acos(clamp_unit(-m));
    auto integrand = [&](double tau) { return detail::intermediate_average(m, tau) * 0.5 * std::sin(tau); };
    quad_options opt;
    opt.abs_tol = quad_tol;
    const double integral =
        integrate_segmented(integrand, intermediate_support_breakpoints(xi), opt).value;
    return {integral, m, std::abs(integral - m)};
}

} // namespace cnhv
