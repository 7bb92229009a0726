#ifndef TVARMA_NUMERIC_HPP
#define TVARMA_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "tvarma/types.hpp"

namespace tvarma {

// Compensated (Kahan) summation so reductions do not depend on chunk order.
class KahanSum {
public:
    void add(Scalar x) {
        const Scalar y = x - carry_;
        const Scalar t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum_);
        add(-other.carry_);
    }
    Scalar value() const { return sum_; }

private:
    Scalar sum_ = 0.0;
    Scalar carry_ = 0.0;
};

// Running mean / variance with standard errors for Monte Carlo reducers.
class MomentAccumulator {
public:
    void add(Scalar x) {
        ++n_;
        sum_.add(x);
        sumSq_.add(x * x);
    }
    void merge(const MomentAccumulator& other) {
        n_ += other.n_;
        sum_.merge(other.sum_);
        sumSq_.merge(other.sumSq_);
    }
    std::int64_t count() const { return n_; }
    Scalar mean() const { return n_ > 0 ? sum_.value() / static_cast<Scalar>(n_) : 0.0; }
    Scalar variance() const {
        if (n_ < 2) return 0.0;
        const Scalar m = mean();
        const Scalar v = sumSq_.value() / static_cast<Scalar>(n_) - m * m;
        return std::max(v, 0.0) * static_cast<Scalar>(n_) / static_cast<Scalar>(n_ - 1);
    }
    Scalar stderrMean() const {
        return n_ > 0 ? std::sqrt(variance() / static_cast<Scalar>(n_)) : 0.0;
    }

private:
    std::int64_t n_ = 0;
    KahanSum sum_;
    KahanSum sumSq_;
};

// Counter-based seed split: replication i of master seed s gets
// splitmix64(s + golden * (i+1)), so streams never overlap by construction.
inline std::uint64_t splitSeed(std::uint64_t master, std::uint64_t replication) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (replication + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic parallel map-reduce: work is cut into fixed chunks that are
// merged in chunk order, so results are identical for any thread count.
template <typename State>
void parallelChunks(std::int64_t n, int threads,
                    const std::function<void(std::int64_t, State&)>& body,
                    const std::function<void(const State&)>& mergeInOrder) {
    if (n <= 0) return;
    threads = std::max(1, threads);
    const std::int64_t chunkCount = std::min<std::int64_t>(n, 64);
    const std::int64_t chunkSize = (n + chunkCount - 1) / chunkCount;
    std::vector<State> states(static_cast<std::size_t>(chunkCount));

    auto runChunk = [&](std::int64_t c) {
        const std::int64_t lo = c * chunkSize;
        const std::int64_t hi = std::min(n, lo + chunkSize);
        for (std::int64_t i = lo; i < hi; ++i) body(i, states[static_cast<std::size_t>(c)]);
    };

    if (threads == 1) {
        for (std::int64_t c = 0; c < chunkCount; ++c) runChunk(c);
    } else {
        std::vector<std::thread> pool;
        std::int64_t next = 0;
        std::mutex mtx;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::int64_t c;
                    {
                        std::lock_guard<std::mutex> lock(mtx);
                        if (next >= chunkCount) return;
                        c = next++;
                    }
                    runChunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& st : states) mergeInOrder(st);
}

}  // namespace tvarma

#endif
