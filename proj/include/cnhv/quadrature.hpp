// Globally adaptive Gauss-Kronrod (G7, K15) quadrature with an absolute
// error target. The worst interval is bisected until the summed error
// estimate drops below the tolerance; quadrature_error is thrown if the
// interval budget runs out first.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cnhv/errors.hpp"

namespace cnhv {

struct quad_options {
    double abs_tol = 1e-8;
    int max_intervals = 100000;
};

struct quad_result {
    double value = 0.0;
    double error = 0.0; // summed |K15 - G7| estimate, conservative
    int intervals = 0;
};

namespace detail {

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights; QUADPACK dqk15 constants.
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct quad_interval {
    double lo, hi, value, error;
};

template <class F>
quad_interval gk15(F& f, double lo, double hi)
{
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = f(c);
    double kron = gk_weights[7] * fc;
    double gauss = g7_weights[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * gk_nodes[j];
        const double fsum = f(c - x) + f(c + x);
        kron += gk_weights[j] * fsum;
        if (j % 2 == 1) gauss += g7_weights[j / 2] * fsum;
    }
    return {lo, hi, kron * h, std::abs((kron - gauss) * h)};
}

} // namespace detail

/// Integrate f over consecutive segments [pts[0], pts[1]], ...,
/// refining globally until the total error estimate is below
/// opt.abs_tol.
template <class F>
quad_result integrate_segmented(F&& f, std::span<const double> pts, const quad_options& opt = {})
{
    std::vector<detail::quad_interval> ivals;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i] <= pts[i + 1])) throw std::invalid_argument("quadrature breakpoints must be ordered");
        if (pts[i] == pts[i + 1]) continue;
        ivals.push_back(detail::gk15(f, pts[i], pts[i + 1]));
        total_error += ivals.back().error;
    }

    auto by_error = [](const detail::quad_interval& a, const detail::quad_interval& b) {
        return a.error < b.error;
    };
    std::make_heap(ivals.begin(), ivals.end(), by_error);

    while (total_error > opt.abs_tol) {
        if (static_cast<int>(ivals.size()) >= opt.max_intervals)
            throw quadrature_error("adaptive quadrature stalled: error " + std::to_string(total_error) +
                                   " above tolerance " + std::to_string(opt.abs_tol) + " after " +
                                   std::to_string(ivals.size()) + " intervals");
        std::pop_heap(ivals.begin(), ivals.end(), by_error);
        const detail::quad_interval worst = ivals.back();
        ivals.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi)
            throw quadrature_error("adaptive quadrature cannot refine further at x = " + std::to_string(mid));
        const auto left = detail::gk15(f, worst.lo, mid);
        const auto right = detail::gk15(f, mid, worst.hi);
        total_error += left.error + right.error - worst.error;
        ivals.push_back(left);
        std::push_heap(ivals.begin(), ivals.end(), by_error);
        ivals.push_back(right);
        std::push_heap(ivals.begin(), ivals.end(), by_error);
    }

    quad_result res;
    res.intervals = static_cast<int>(ivals.size());
    res.error = total_error;
    for (const auto& iv : ivals) res.value += iv.value;
    return res;
}

template <class F>
quad_result integrate(F&& f, double lo, double hi, const quad_options& opt = {})
{
    const double pts[2] = {lo, hi};
    return integrate_segmented(f, pts, opt);
}

} // namespace cnhv
