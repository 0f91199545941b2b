// Exact quantum predictions for a pair of qubits, computed by explicit
// 4x4 matrix expectations in the state
//
//     |psi> = sin(theta/2)|00> + cos(theta/2)|11>,   theta in [0, pi/2],
//
// with local observables sigma.a and sigma.b. These values are the
// ground truth the hidden-variable model is matched against.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "cnhv/vec3.hpp"

namespace cnhv {

using cplx = std::complex<double>;
using cvec4 = std::array<cplx, 4>;
using cmat2 = std::array<std::array<cplx, 2>, 2>;
using cmat4 = std::array<std::array<cplx, 4>, 4>;

/// One-parameter family of entangled two-qubit states. theta = 0 is the
/// separable |11>, theta = pi/2 the maximally entangled state.
class two_qubit_state {
  public:
    explicit two_qubit_state(double theta) : theta_(theta)
    {
        if (!(theta >= 0.0 && theta <= pi / 2.0))
            throw std::invalid_argument("state angle theta must lie in [0, pi/2]");
    }

    double theta() const { return theta_; }

    /// Amplitudes in the |00>,|01>,|10>,|11> basis.
    cvec4 amplitudes() const
    {
        return {cplx(std::sin(theta_ / 2.0), 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0),
                cplx(std::cos(theta_ / 2.0), 0.0)};
    }

  private:
    double theta_;
};

namespace detail {

inline cmat2 sigma_dot(const vec3& n)
{
    // n.x*sigma_x + n.y*sigma_y + n.z*sigma_z
    return {{{cplx(n.z, 0.0), cplx(n.x, -n.y)}, {cplx(n.x, n.y), cplx(-n.z, 0.0)}}};
}

inline cmat2 identity2() { return {{{cplx(1.0, 0.0), cplx(0.0, 0.0)}, {cplx(0.0, 0.0), cplx(1.0, 0.0)}}}; }

/// Spectral projector of sigma.n onto the outcome +1 or -1 eigenspace.
inline cmat2 projector(const vec3& n, int outcome)
{
    const double s = outcome >= 0 ? 1.0 : -1.0;
    cmat2 p = sigma_dot(n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            p[i][j] *= 0.5 * s;
            if (i == j) p[i][j] += 0.5;
        }
    return p;
}

inline cmat4 kron(const cmat2& a, const cmat2& b)
{
    cmat4 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return m;
}

inline double expectation(const cmat4& m, const cvec4& psi)
{
    cplx acc(0.0, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += std::conj(psi[i]) * m[i][j] * psi[j];
    return acc.real();
}

} // namespace detail

/// <sigma.a (x) identity>: the x-side marginal expectation <x(a)>_psi.
inline double marginal_x(const two_qubit_state& st, const setting& a)
{
    return detail::expectation(detail::kron(detail::sigma_dot(a), detail::identity2()), st.amplitudes());
}

/// <identity (x) sigma.b>: the y-side marginal expectation <y(b)>_psi.
inline double marginal_y(const two_qubit_state& st, const setting& b)
{
    return detail::expectation(detail::kron(detail::identity2(), detail::sigma_dot(b)), st.amplitudes());
}

/// <sigma.a (x) sigma.b>: the joint correlation E(a, b).
inline double joint_correlation(const two_qubit_state& st, const setting& a, const setting& b)
{
    return detail::expectation(detail::kron(detail::sigma_dot(a), detail::sigma_dot(b)), st.amplitudes());
}

/// Full joint outcome distribution over (x, y) in {+1, -1}^2, built from
/// spectral projectors.
class outcome_distribution {
  public:
    outcome_distribution(const two_qubit_state& st, const setting& a, const setting& b)
    {
        const cvec4 psi = st.amplitudes();
        double sum = 0.0;
        for (int sx : {+1, -1})
            for (int sy : {+1, -1}) {
                const double v = detail::expectation(
                    detail::kron(detail::projector(a, sx), detail::projector(b, sy)), psi);
                prob(sx, sy) = v;
                sum += v;
            }
        for (int sx : {+1, -1})
            for (int sy : {+1, -1}) {
                const double v = prob(sx, sy);
                if (v < -1e-12 || v > 1.0 + 1e-12)
                    throw std::logic_error("outcome probability outside [0, 1]");
            }
        if (std::abs(sum - 1.0) > 1e-12) throw std::logic_error("outcome probabilities do not sum to 1");
    }

    double p(int sx, int sy) const { return p_[idx(sx)][idx(sy)]; }

    double marginal_x() const { return p(+1, +1) + p(+1, -1) - p(-1, +1) - p(-1, -1); }
    double marginal_y() const { return p(+1, +1) - p(+1, -1) + p(-1, +1) - p(-1, -1); }
    double correlation() const { return p(+1, +1) - p(+1, -1) - p(-1, +1) + p(-1, -1); }

  private:
    static int idx(int s) { return s >= 0 ? 0 : 1; }
    double& prob(int sx, int sy) { return p_[idx(sx)][idx(sy)]; }

    double p_[2][2]{};
};

} // namespace cnhv
