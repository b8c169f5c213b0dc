#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rwlab {

struct DecaySample {
    double n = 0;
    double value = 0;
    double stderr_ = 0;
};

enum class Verdict { exponential, subexponential, inconclusive };
const char* verdict_name(Verdict v);

struct DecayRateEstimate {
    std::vector<DecaySample> samples;
    double rate = 0;  // lambda in log v = a + lambda n + beta log n
    double rate_lo = 0, rate_hi = 0;
    double beta = 0;
    std::vector<double> roots;  // v^{1/n}
    bool roots_nondecreasing = false;
    bool values_nondecreasing = false;  // within sigmas; rules out exponential
    Verdict verdict = Verdict::inconclusive;
};

struct DecayOptions {
    std::size_t resamples = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    double sigmas = 3.0;
};

DecayRateEstimate decay_classify(const std::vector<DecaySample>& samples, const DecayOptions& opts = {});

}  // namespace rwlab
