#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nlsd {

inline int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Deterministic parallel map-reduce over an id interval. The interval is cut
// into `partitions` contiguous chunks; workers process whole chunks and the
// per-chunk results are folded in ascending chunk order, so the outcome does
// not depend on thread count or scheduling.
//
//   MapRange: R(uint64_t lo, uint64_t hi)
//   Reduce:   void(R& acc, R&& chunk)
template <class R, class MapRange, class Reduce>
R parallel_sweep(std::uint64_t lo, std::uint64_t hi, int threads, int partitions,
                 MapRange map_range, Reduce reduce, R init = R{}) {
    if (lo > hi) throw std::out_of_range("parallel_sweep: bad interval");
    if (partitions < 1) partitions = 1;
    std::uint64_t len = hi - lo;
    if (len == 0) return init;
    if (static_cast<std::uint64_t>(partitions) > len) partitions = static_cast<int>(len);

    std::vector<R> results(partitions);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= partitions) return;
            std::uint64_t a = lo + len * static_cast<std::uint64_t>(k) / partitions;
            std::uint64_t b = lo + len * static_cast<std::uint64_t>(k + 1) / partitions;
            results[k] = map_range(a, b);
        }
    };

    int nthreads = threads < 1 ? 1 : (threads > partitions ? partitions : threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    R acc = std::move(init);
    for (int k = 0; k < partitions; ++k) reduce(acc, std::move(results[k]));
    return acc;
}

}  // namespace nlsd
