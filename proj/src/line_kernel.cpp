#include "rwlab/line_kernel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace rwlab {

namespace {

// FFTW planning is not thread-safe.
std::mutex plan_mutex;

constexpr double unit_roundoff = 0x1p-53;

}  // namespace

double LineDistribution::mass() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

LineDistribution line_from_map(const std::map<std::int64_t, double>& atoms) {
    LineDistribution d;
    if (atoms.empty()) return d;
    d.offset = atoms.begin()->first;
    d.p.assign(static_cast<std::size_t>(atoms.rbegin()->first - d.offset + 1), 0.0);
    for (const auto& [k, w] : atoms) d.p[static_cast<std::size_t>(k - d.offset)] = w;
    return d;
}

LineDistribution convolve_line(const LineDistribution& a, const LineDistribution& b) {
    LineDistribution out;
    if (a.p.empty() || b.p.empty()) return out;
    const std::size_t n = a.p.size() + b.p.size() - 1;
    out.offset = a.offset + b.offset;
    const double ma = a.mass(), mb = b.mass();
    double kernel_error = 0.0;
    if (a.p.size() * b.p.size() <= (std::size_t{1} << 22)) {
        out.p.assign(n, 0.0);
        for (std::size_t i = 0; i < a.p.size(); ++i)
            for (std::size_t j = 0; j < b.p.size(); ++j) out.p[i + j] += a.p[i] * b.p[j];
        kernel_error = static_cast<double>(std::min(a.p.size(), b.p.size()) + 2) * 2 * unit_roundoff * ma * mb;
    } else {
        std::size_t len = 1;
        while (len < n) len <<= 1;
        const std::size_t half = len / 2 + 1;
        double* ra = fftw_alloc_real(len);
        double* rb = fftw_alloc_real(len);
        fftw_complex* ca = fftw_alloc_complex(half);
        fftw_complex* cb = fftw_alloc_complex(half);
        fftw_plan fa, fb, inv;
        {
            std::lock_guard<std::mutex> lock(plan_mutex);
            fa = fftw_plan_dft_r2c_1d(static_cast<int>(len), ra, ca, FFTW_ESTIMATE);
            fb = fftw_plan_dft_r2c_1d(static_cast<int>(len), rb, cb, FFTW_ESTIMATE);
            inv = fftw_plan_dft_c2r_1d(static_cast<int>(len), ca, ra, FFTW_ESTIMATE);
        }
        for (std::size_t i = 0; i < len; ++i) {
            ra[i] = i < a.p.size() ? a.p[i] : 0.0;
            rb[i] = i < b.p.size() ? b.p[i] : 0.0;
        }
        fftw_execute(fa);
        fftw_execute(fb);
        for (std::size_t k = 0; k < half; ++k) {
            std::complex<double> x(ca[k][0], ca[k][1]), y(cb[k][0], cb[k][1]);
            auto z = x * y;
            ca[k][0] = z.real();
            ca[k][1] = z.imag();
        }
        fftw_execute(inv);
        out.p.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.p[i] = ra[i] / static_cast<double>(len);
        {
            std::lock_guard<std::mutex> lock(plan_mutex);
            fftw_destroy_plan(fa);
            fftw_destroy_plan(fb);
            fftw_destroy_plan(inv);
        }
        fftw_free(ra);
        fftw_free(rb);
        fftw_free(ca);
        fftw_free(cb);
        // Pointwise FFT convolution error is at most c log2(len) u |a|_1 |b|_1
        // with a small constant c; summed over n outputs and taken with c = 16.
        const double lg = std::log2(static_cast<double>(len));
        kernel_error = static_cast<double>(n) * 16.0 * lg * unit_roundoff * ma * mb;
    }
    for (auto& v : out.p)
        if (v < 0) v = 0;  // true values are nonnegative; clamping only moves toward them
    out.error = a.error * mb + b.error * ma + a.error * b.error + kernel_error;
    return out;
}

double l1_shifted(const LineDistribution& a, const LineDistribution& b, std::int64_t shift) {
    const std::int64_t lo = std::min(a.offset, b.offset + shift);
    const std::int64_t hi = std::max(a.offset + static_cast<std::int64_t>(a.p.size()),
                                     b.offset + shift + static_cast<std::int64_t>(b.p.size()));
    double s = 0.0;
    for (std::int64_t k = lo; k < hi; ++k) {
        std::int64_t ia = k - a.offset, ib = k - shift - b.offset;
        double va = ia >= 0 && ia < static_cast<std::int64_t>(a.p.size()) ? a.p[static_cast<std::size_t>(ia)] : 0.0;
        double vb = ib >= 0 && ib < static_cast<std::int64_t>(b.p.size()) ? b.p[static_cast<std::size_t>(ib)] : 0.0;
        s += std::abs(va - vb);
    }
    return s;
}

}  // namespace rwlab
