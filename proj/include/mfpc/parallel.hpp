#ifndef MFPC_PARALLEL_HPP
#define MFPC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfpc {

// Reductions are accumulated over fixed-size chunks and the partials are
// combined in chunk order. The chunk layout depends only on the problem
// size, never on the thread count, so results are bit-identical whether a
// loop runs on one thread or many.
inline constexpr std::size_t kReductionChunk = 1024;

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline std::size_t chunk_count(std::size_t n) {
    return (n + kReductionChunk - 1) / kReductionChunk;
}

// Elementwise-independent loop; iterations must not share mutable state.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        body(static_cast<std::size_t>(i));
    }
}

// Deterministic sum of fn(i) for i in [0, n). Acc needs operator+= and a
// zero-initialized state supplied by the caller.
template <typename Acc, typename F>
Acc chunked_sum(std::size_t n, Acc zero, F&& fn) {
    const std::size_t chunks = chunk_count(n);
    if (chunks <= 1) {
        Acc acc = zero;
        for (std::size_t i = 0; i < n; ++i) acc += fn(i);
        return acc;
    }
    std::vector<Acc> partial(chunks, zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t hi = std::min(n, lo + kReductionChunk);
        Acc acc = zero;
        for (std::size_t i = lo; i < hi; ++i) acc += fn(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    Acc total = zero;
    for (const Acc& p : partial) total += p;
    return total;
}

}  // namespace mfpc

#endif  // MFPC_PARALLEL_HPP
