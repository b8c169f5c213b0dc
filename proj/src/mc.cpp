#include "rwlab/mc.hpp"

#include <cstdlib>
#include <string>

namespace rwlab {

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t draw_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::size_t default_threads() {
    if (const char* env = std::getenv("RWLAB_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

Sampler::Sampler(const FMeasure& nu) {
    std::vector<double> w;
    for (const auto& [g, p] : nu.atoms) {
        atoms_.push_back(g);
        w.push_back(p);
    }
    if (atoms_.empty()) fail(ErrorKind::config, "cannot sample from an empty measure");
    pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

}  // namespace rwlab
