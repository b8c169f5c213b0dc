#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace rwlab {

// Dense law on the integer line: p[i] is the mass at offset + i. error is an
// upper bound on the L1 distance to the exact law.
struct LineDistribution {
    std::int64_t offset = 0;
    std::vector<double> p;
    double error = 0.0;

    double mass() const;
};

LineDistribution line_from_map(const std::map<std::int64_t, double>& atoms);

// Direct summation for small inputs, FFTW (r2c/c2r, estimate plans) otherwise.
LineDistribution convolve_line(const LineDistribution& a, const LineDistribution& b);

// sum_k |a(k) - b(k - shift)|, i.e. a against b translated by +shift
double l1_shifted(const LineDistribution& a, const LineDistribution& b, std::int64_t shift);

}  // namespace rwlab
