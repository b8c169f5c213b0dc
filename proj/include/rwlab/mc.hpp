#pragma once

#include "rwlab/measure.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace rwlab {

using Rng = std::mt19937_64;

// splitmix64 of (master, stream)
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream);
std::uint64_t draw_seed();

// --threads, else RWLAB_THREADS, else hardware concurrency
std::size_t default_threads();

// Samples are cut into fixed chunks, each with its own stream, so results do
// not depend on the thread count.
constexpr std::size_t mc_chunk = 1u << 14;

inline std::size_t chunk_count(std::size_t samples) { return (samples + mc_chunk - 1) / mc_chunk; }
inline std::size_t chunk_size(std::size_t samples, std::size_t chunk) {
    return std::min(mc_chunk, samples - chunk * mc_chunk);
}

// f(chunk) -> Acc; results are returned in chunk order.
template <class Acc, class F>
std::vector<Acc> run_chunks(std::size_t chunks, std::size_t threads, F&& f) {
    std::vector<Acc> out(chunks);
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) out[c] = f(c);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, chunks); ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t c; (c = next.fetch_add(1)) < chunks;) out[c] = f(c);
            } catch (...) {
                errors[t] = std::current_exception();
                next = chunks;
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

class Sampler {
public:
    Sampler() = default;
    explicit Sampler(const FMeasure& nu);
    const Element& draw(Rng& rng) { return atoms_[pick_(rng)]; }
    std::size_t draw_index(Rng& rng) { return pick_(rng); }
    const std::vector<Element>& atoms() const { return atoms_; }

private:
    std::vector<Element> atoms_;
    std::discrete_distribution<std::size_t> pick_;
};

}  // namespace rwlab
