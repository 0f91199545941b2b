// Deterministic chunked map-reduce for Monte Carlo loops.
//
// Work is split into fixed-size chunks of sample indices. Each chunk is
// accumulated in index order into its own partial sums, chunks may be
// processed by any number of worker threads, and the partials are
// combined in chunk order. The result is bit-identical for every thread
// count, including 1.
#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cnhv {

/// Worker count used when a caller passes threads = 0: the CNHV_THREADS
/// environment variable if set and positive, else the hardware
/// concurrency, else 1.
inline unsigned default_thread_count()
{
    if (const char* env = std::getenv("CNHV_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1u;
}

inline constexpr std::uint64_t default_chunk_size = 1u << 14;

/// Sums K accumulators over sample indices [0, n). `body(i, acc)` adds
/// sample i's contribution to acc. Deterministic in n, chunk and body;
/// independent of `threads`.
template <std::size_t K, class Body>
std::array<double, K> chunked_accumulate(std::uint64_t n, Body&& body, unsigned threads = 0,
                                         std::uint64_t chunk = default_chunk_size)
{
    if (threads == 0) threads = default_thread_count();
    const std::uint64_t nchunks = n == 0 ? 0 : (n - 1) / chunk + 1;
    std::vector<std::array<double, K>> partial(nchunks, std::array<double, K>{});

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t lo = c * chunk;
        const std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
        std::array<double, K> acc{};
        for (std::uint64_t i = lo; i < hi; ++i) body(i, acc);
        partial[c] = acc;
    };

    if (threads <= 1 || nchunks <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) run_chunk(c);
        };
        std::vector<std::thread> pool;
        const unsigned nw = threads < nchunks ? threads : static_cast<unsigned>(nchunks);
        pool.reserve(nw);
        for (unsigned t = 0; t < nw; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::array<double, K> total{};
    for (std::uint64_t c = 0; c < nchunks; ++c)
        for (std::size_t k = 0; k < K; ++k) total[k] += partial[c][k];
    return total;
}

} // namespace cnhv
