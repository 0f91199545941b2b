// Counter-based random number streams.
//
// Every Monte Carlo sample draws from its own stream, keyed by
// (seed, sample index). Streams are stateless to set up, so a loop over
// samples produces the same numbers no matter how it is partitioned
// across threads.
#pragma once

#include <cstdint>

#include "cnhv/vec3.hpp"

namespace cnhv {

namespace detail {

// splitmix64 finalizer; a well-mixed bijection on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

} // namespace detail

/// One random stream of the counter-based generator. Construction from
/// (seed, stream index) is O(1); successive draws walk a splitmix64
/// sequence private to the stream.
class counter_rng {
  public:
    counter_rng(std::uint64_t seed, std::uint64_t stream)
        : state_(detail::mix64(seed ^ detail::mix64(stream * detail::golden_gamma + 0x123456789abcdefULL)))
    {
    }

    std::uint64_t next_u64()
    {
        state_ += detail::golden_gamma;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    std::uint64_t state_;
};

/// Uniform direction on the unit sphere (two draws from the stream).
inline vec3 sample_unit_sphere(counter_rng& rng)
{
    const double c = 2.0 * rng.next_double() - 1.0; // z-component, uniform in [-1, 1)
    const double phi = 2.0 * pi * rng.next_double();
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    return {s * std::cos(phi), s * std::sin(phi), c};
}

/// Ontic direction sample: uniform on the sphere.
inline vec3 sample_lambda(counter_rng& rng) { return sample_unit_sphere(rng); }

} // namespace cnhv
