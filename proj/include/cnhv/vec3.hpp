// Small fixed-size 3-vector math plus the measurement-setting and
// spherical-coordinate types shared across the library.
//
// Coordinate convention: the entangled particles propagate along the
// y-axis, so the polar angle tau of a direction is measured from +y
// (the north pole) and measurement settings normally live in the x-z
// plane (the equatorial plane).
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cnhv {

inline constexpr double pi = std::numbers::pi;

// Absolute tolerance for "is a unit vector" checks.
inline constexpr double unit_norm_tol = 1e-12;

struct vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr vec3 operator+(const vec3& a, const vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr vec3 operator-(const vec3& a, const vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr vec3 operator*(double s, const vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
constexpr vec3 operator*(const vec3& v, double s) { return s * v; }

constexpr double dot(const vec3& a, const vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr vec3 cross(const vec3& a, const vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const vec3& v) { return std::sqrt(dot(v, v)); }

inline vec3 normalized(const vec3& v)
{
    const double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    return {v.x / n, v.y / n, v.z / n};
}

inline double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

/// Measurement direction: a real unit 3-vector. Construction rejects
/// vectors whose norm deviates from 1 by more than unit_norm_tol; callers
/// are expected to hand in exact directions, not approximately-normalized
/// ones.
class setting {
  public:
    explicit setting(const vec3& v) : v_(v)
    {
        if (std::abs(norm(v) - 1.0) > unit_norm_tol)
            throw std::invalid_argument("setting is not a unit vector (|norm-1| = " +
                                        std::to_string(std::abs(norm(v) - 1.0)) + ")");
    }
    setting(double x, double y, double z) : setting(vec3{x, y, z}) {}

    const vec3& vec() const { return v_; }
    operator const vec3&() const { return v_; }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

  private:
    vec3 v_;
};

/// Spherical coordinates with the north pole along +y:
///   v = (sin(tau) cos(mu), cos(tau), sin(tau) sin(mu)),
/// mu in [0, 2*pi), tau in [0, pi]. mu = 0 points along +x and mu = pi/2
/// along +z.
struct spherical {
    double mu;
    double tau;
};

inline vec3 from_spherical(double mu, double tau)
{
    const double st = std::sin(tau);
    return {st * std::cos(mu), std::cos(tau), st * std::sin(mu)};
}

inline vec3 from_spherical(const spherical& s) { return from_spherical(s.mu, s.tau); }

inline spherical to_spherical(const vec3& v)
{
    const double tau = std::acos(clamp_unit(v.y));
    double mu = std::atan2(v.z, v.x);
    if (mu < 0.0) mu += 2.0 * pi;
    if (mu >= 2.0 * pi) mu = 0.0;
    return {mu, tau};
}

/// Azimuth of an equatorial (x-z plane) direction, in [0, 2*pi).
inline double equator_azimuth(const vec3& v)
{
    double mu = std::atan2(v.z, v.x);
    if (mu < 0.0) mu += 2.0 * pi;
    return mu;
}

/// Rotate v by angle about a unit axis (Rodrigues formula).
inline vec3 rotate_about(const vec3& v, const vec3& axis, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * v + s * cross(axis, v) + (1.0 - c) * dot(axis, v) * axis;
}

} // namespace cnhv
