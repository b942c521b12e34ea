#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace heis {

// Static block partition over [0, n).  Each index writes its own output slot,
// so results are identical for every thread count; reductions over the slots
// are done by the caller in a fixed order.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Pairwise tree sum: a fixed reduction order that does not depend on how the
// slots were filled.
template <typename T>
T tree_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    std::size_t n = v.size();
    while (n > 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return v[0];
}

}  // namespace heis
