#include "rwlab/decay.hpp"

#include "rwlab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace rwlab {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::exponential: return "exponential";
    case Verdict::subexponential: return "subexponential";
    default: return "inconclusive";
    }
}

namespace {

// returns (lambda, beta)
std::pair<double, double> fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& logs) {
    Eigen::VectorXd c = design.colPivHouseholderQr().solve(logs);
    return {c(1), c(2)};
}

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

DecayRateEstimate decay_classify(const std::vector<DecaySample>& samples, const DecayOptions& opts) {
    if (samples.size() < 4) fail(ErrorKind::domain, "decay_classify needs at least 4 points");
    DecayRateEstimate est;
    est.samples = samples;
    std::sort(est.samples.begin(), est.samples.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    const auto m = static_cast<Eigen::Index>(est.samples.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd logs(m), rel(m);
    bool all_at_most_one = true;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& s = est.samples[static_cast<std::size_t>(i)];
        if (!(s.value > 0) || !std::isfinite(s.value)) fail(ErrorKind::domain, "decay_classify needs positive values");
        if (s.n <= 0) fail(ErrorKind::domain, "decay_classify needs positive n");
        design(i, 0) = 1.0;
        design(i, 1) = s.n;
        design(i, 2) = std::log(s.n);
        logs(i) = std::log(s.value);
        rel(i) = s.stderr_ / s.value;
        if (s.value > 1.0) all_at_most_one = false;
    }
    std::tie(est.rate, est.beta) = fit(design, logs);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> rates;
    rates.reserve(opts.resamples);
    for (std::size_t b = 0; b < opts.resamples; ++b) {
        Eigen::VectorXd l = logs;
        for (Eigen::Index i = 0; i < m; ++i) l(i) += rel(i) * z(rng);
        rates.push_back(fit(design, l).first);
    }
    est.rate_lo = std::min(percentile(rates, 0.025), est.rate);
    est.rate_hi = std::max(percentile(rates, 0.975), est.rate);
    if (all_at_most_one) {
        est.rate_lo = std::min(est.rate_lo, 0.0);
        est.rate_hi = std::min(est.rate_hi, 0.0);
    }

    est.roots_nondecreasing = true;
    est.values_nondecreasing = true;
    for (std::size_t i = 0; i < est.samples.size(); ++i) {
        const auto& s = est.samples[i];
        est.roots.push_back(std::pow(s.value, 1.0 / s.n));
        if (i == 0) continue;
        const auto& p = est.samples[i - 1];
        double sd = std::hypot(est.roots[i] * (s.stderr_ / s.value) / s.n, est.roots[i - 1] * (p.stderr_ / p.value) / p.n);
        if (est.roots[i] + opts.sigmas * sd + opts.tolerance < est.roots[i - 1]) est.roots_nondecreasing = false;
        if (s.value + opts.sigmas * std::hypot(s.stderr_, p.stderr_) < p.value) est.values_nondecreasing = false;
    }

    // a log-n term can bend a rising sequence into a negative lambda
    if (est.rate_hi < -opts.tolerance && !est.values_nondecreasing)
        est.verdict = Verdict::exponential;
    else if ((est.rate_lo <= opts.tolerance || est.values_nondecreasing) && est.roots_nondecreasing)
        est.verdict = Verdict::subexponential;
    else
        est.verdict = Verdict::inconclusive;
    return est;
}

}  // namespace rwlab
