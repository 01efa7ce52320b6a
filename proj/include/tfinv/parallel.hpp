#pragma once

#include <atomic>
#include <future>
#include <vector>

namespace tfinv {

/* Process-wide worker count for the batch loops (CLI --workers). */
void set_workers(int n);
int workers();

/* Deterministic parallel sum: the index range is cut into a fixed number of
 * chunks independent of the worker count, each chunk reduced in index order,
 * and the partials added in chunk order.  Results are therefore bit-identical
 * for any worker count. */
template <class Fn>
double parallel_sum(std::size_t count, Fn&& term) {
    constexpr std::size_t kChunks = 64;
    const std::size_t nchunk = count < kChunks ? (count == 0 ? 0 : count) : kChunks;
    std::vector<double> partial(nchunk, 0.0);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = count * c / nchunk;
        const std::size_t hi = count * (c + 1) / nchunk;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[c] = s;
    };
    const int w = workers();
    if (w <= 1 || nchunk <= 1) {
        for (std::size_t c = 0; c < nchunk; ++c) run_chunk(c);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<std::size_t> next{0};
        const std::size_t nthreads = std::min(static_cast<std::size_t>(w), nchunk);
        for (std::size_t t = 0; t < nthreads; ++t)
            futs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t c = next.fetch_add(1); c < nchunk; c = next.fetch_add(1)) run_chunk(c);
            }));
        for (auto& f : futs) f.get();
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

} // namespace tfinv
