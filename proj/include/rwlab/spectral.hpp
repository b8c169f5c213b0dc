#pragma once

#include "rwlab/decay.hpp"
#include "rwlab/inverted_orbit.hpp"
#include "rwlab/lamplighter.hpp"
#include "rwlab/measure.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwlab {

struct ReturnProbability {
    std::size_t n = 0;
    Mode mode = Mode::exact;
    std::optional<Rational> exact;
    double value = 0, stderr_ = 0;
};

// p_k(x, x) for k = 0..n_max by exact evolution of the orbit law
std::vector<Rational> return_sequence_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                            std::size_t n_max, std::size_t budget = 5000000);
// Same in double precision; deterministic, no error bar beyond rounding.
std::vector<double> return_sequence_float(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                          std::size_t n_max, std::size_t budget = 20000000);

ReturnProbability return_probability(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                     Mode mode, std::size_t samples = 0, std::uint64_t seed = 0,
                                     std::size_t threads = 1, std::size_t budget = 5000000);

// Law of the distance |X_n| for simple random walk on F_k: laws[n][d].
// From 0 the chain moves to 1; from d > 0 it moves up w.p. (2k-1)/2k.
std::vector<std::vector<Rational>> free_distance_laws(std::size_t k, std::size_t n_max);

struct SpectralRow {
    std::size_t time = 0;  // even
    double p = 0;
    std::optional<Rational> exact;
    double root = 0;   // p_{2n}^{1/2n}
    double ratio = 0;  // (p_{2n} / p_{2n-2})^{1/2}, 0 at time 0
};

struct SpectralReport {
    std::string method;  // exact, float, distance-chain
    std::vector<SpectralRow> rows;
    double rho_root = 0, rho_ratio = 0;
    double estimator_gap = 0;  // rho_ratio - rho_root
};

// method: "auto" picks the distance chain for free-group SRW, else exact
SpectralReport spectral_radius(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n_max,
                               std::string_view method = "auto", std::size_t budget = 5000000);
SpectralReport spectral_from_sequence(std::string method, const std::vector<double>& p,
                                      const std::vector<Rational>* exact = nullptr);
bool is_free_srw(const ActionOracle& oracle, const RMeasure& nu);

struct Network {
    std::size_t size = 0;
    struct Edge {
        std::size_t a, b;
        double c;
    };
    std::vector<Edge> edges;
    std::vector<double> pi;
    std::vector<bool> boundary;  // vertices touching a truncation
    std::vector<std::string> labels;

    std::size_t index(std::string_view label) const;
};

// "src,dst,conductance" rows, optional header; pi = incident conductance
Network network_from_csv(std::string_view text);
// Transition network of nu on a Schreier ball: c(x, y) = P(x, y), pi = 1.
// Vertices at the ball's outer radius are marked as boundary.
Network network_from_ball(const ActionOracle& oracle, const RMeasure& nu, const SchreierBall& ball);

struct Expansion {
    double phi = 0;
    std::size_t witness = 0;  // index into candidates
    std::vector<std::size_t> witness_set;
    bool touches_boundary = false;
};

double set_expansion(const Network& net, const std::vector<std::size_t>& s, bool* touches = nullptr);
Expansion edge_expansion(const Network& net, const std::vector<std::vector<std::size_t>>& candidates);

// Phi-hat over point sets of the infinite Schreier graph, counting pi:
// sum_{x in S} P(x, outside S) / |S|. Exact boundary, no truncation.
Expansion oracle_expansion(const ActionOracle& oracle, const RMeasure& nu,
                           const std::vector<std::vector<Point>>& candidates);
// folner_candidate(r) for r in radii
Expansion catalogue_expansion(const ActionOracle& oracle, const RMeasure& nu, const std::vector<std::size_t>& radii);

struct MoharReport {
    double rho_hat = 0;   // ratio estimator
    double phi_hat = 0;
    double slack = 0;
    double one_minus_rho = 0;
    double lower_lhs = 0;  // 1 - sqrt(1 - phi^2)
    bool sound_holds = false;  // 1 - rho <= phi + slack
    bool lower_holds = false;  // informational
    double margin = 0;
};

MoharReport mohar_check(const SpectralReport& spectral, double phi_hat, double stderr_ = 0);

struct KestenCell {
    std::size_t n = 0;
    Rational r;
    double value = 0, stderr_ = 0;
    std::uint64_t hits = 0;
};

struct KestenCheck {
    std::size_t n = 0;
    Rational r;
    double exact = 0, mc = 0, tolerance = 0;
    bool holds = false;
};

struct KestenDecayReport {
    std::string metric;
    std::vector<Rational> r_grid;
    std::vector<std::size_t> n_grid;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<KestenCell> cells;
    std::vector<DecayRateEstimate> fits;  // one per r
    std::vector<std::string> fit_notes;
    std::vector<KestenCheck> cross_checks;
};

// P(|X_n| <= r n) under the word length. One trajectory serves every n.
KestenDecayReport linear_radius_decay(const ActionOracle& oracle, const RMeasure& nu, const std::vector<Rational>& r_grid,
                                      const std::vector<std::size_t>& n_grid, std::size_t samples, std::uint64_t seed,
                                      std::size_t threads = 1);
// Finite lamplighter with D = d_C + d_R.
KestenDecayReport linear_radius_decay_lamp(const LampContext& ctx, const SwsMeasure& nu_hat,
                                           const std::vector<Rational>& r_grid, const std::vector<std::size_t>& n_grid,
                                           std::size_t samples, std::uint64_t seed, std::size_t threads = 1);

// Exact P(|X_n| <= r n) by evolution on the group (free-group SRW uses the distance chain).
Rational length_tail_exact(const ActionOracle& oracle, const RMeasure& nu, std::size_t n, const Rational& r,
                           std::size_t budget = 5000000);
// Adds exact-vs-MC 3 sigma rows for every cell with n <= n_exact.
void kesten_cross_check(KestenDecayReport& rep, const ActionOracle& oracle, const RMeasure& nu, std::size_t n_exact);

}  // namespace rwlab
