// Departure of the intermediate-level average f(a, tau) from the
// quantum marginal, and its closed-form upper bound for settings in
// the x-z plane:
//
//     delta(a) = Int (f(a, tau) - <x>)^2 rho(tau) dtau
//     delta <= cos(theta) - <x>^2          (a in the settings' plane)
//
// The bound is what makes the intermediate level unobservable in
// principle only, not trivially flat.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnhv/ontic.hpp"
#include "cnhv/quadrature.hpp"
#include "cnhv/quantum.hpp"
#include "cnhv/vec3.hpp"

namespace cnhv {

/// Mean squared departure of f(a, tau) from the quantum marginal.
inline double delta(const two_qubit_state& st, const setting& a, double quad_tol = 1e-8)
{
    const double m = marginal_x(st, a);
    const double xi = std::acos(clamp_unit(-m));
    auto integrand = [&](double tau) {
        const double diff = detail::intermediate_average(m, tau) - m;
        return diff * diff * 0.5 * std::sin(tau);
    };
    quad_options opt;
    opt.abs_tol = quad_tol;
    return integrate_segmented(integrand, intermediate_support_breakpoints(xi), opt).value;
}

/// Closed-form bound cos(theta) - <x>^2, derived for in-plane settings.
inline double delta_bound(const two_qubit_state& st, const setting& a)
{
    const double m = marginal_x(st, a);
    return std::cos(st.theta()) - m * m;
}

struct sweep_row {
    double theta;
    double delta_model;
    double delta_bound;
};

/// delta and its bound on a uniform theta grid over [0, pi/2].
inline std::vector<sweep_row> figure_sweep(const setting& a, int n_theta, double quad_tol = 1e-8)
{
    if (n_theta < 2) throw std::invalid_argument("theta sweep needs at least 2 grid points");
    std::vector<sweep_row> rows;
    rows.reserve(static_cast<std::size_t>(n_theta));
    for (int i = 0; i < n_theta; ++i) {
        const double theta = 0.5 * pi * static_cast<double>(i) / (n_theta - 1);
        const two_qubit_state st(theta);
        rows.push_back({theta, delta(st, a, quad_tol), delta_bound(st, a)});
    }
    return rows;
}

/// CSV with header theta,delta_model,delta_bound; %.17g fields, LF line
/// endings. Returns the full file contents.
inline std::string sweep_csv(const std::vector<sweep_row>& rows)
{
    std::string out = "theta,delta_model,delta_bound\n";
    char buf[128];
    for (const sweep_row& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.theta, r.delta_model, r.delta_bound);
        out += buf;
    }
    return out;
}

} // namespace cnhv
