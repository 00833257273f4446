#pragma once

// Deterministic chunked parallelism.  Work over n items is split into a
// fixed number of chunks (independent of the OpenMP thread count); chunk
// results are merged in chunk-index order, so floating-point accumulation
// is bit-identical whether the chunk loop runs serially or parallel.

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdelab {

inline constexpr std::size_t kDefaultChunks = 16;

struct ChunkRange {
    std::size_t index;
    std::size_t begin;
    std::size_t end;
};

inline std::vector<ChunkRange> make_chunks(std::size_t n, std::size_t chunks) {
    if (chunks == 0) chunks = 1;
    if (chunks > n && n > 0) chunks = n;
    std::vector<ChunkRange> out;
    out.reserve(chunks);
    const std::size_t base = (chunks == 0) ? 0 : n / chunks;
    const std::size_t rem = (chunks == 0) ? 0 : n % chunks;
    std::size_t start = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t len = base + (c < rem ? 1 : 0);
        out.push_back({c, start, start + len});
        start += len;
    }
    return out;
}

// Runs body(chunk) for every chunk, in parallel when `parallel` is true.
// Exceptions from workers are captured and rethrown on the calling thread.
template <class Body>
void for_each_chunk(std::size_t n, std::size_t chunks, bool parallel, Body&& body) {
    const auto ranges = make_chunks(n, chunks);
    if (!parallel || ranges.size() <= 1) {
        for (const auto& r : ranges) body(r);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long i = 0; i < static_cast<long long>(ranges.size()); ++i) {
        try {
            body(ranges[static_cast<std::size_t>(i)]);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace sdelab
