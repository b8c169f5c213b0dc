#pragma once

#include "rwlab/measure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rwlab {

using IncrementSequence = std::vector<Element>;

struct InvertedOrbit {
    Point origin;
    std::size_t n = 0;
    std::vector<Point> points;  // sorted, distinct
    std::size_t size() const { return points.size(); }
};

// {x, h_n x, h_n h_{n-1} x, ..., h_n ... h_1 x}, one running composite.
InvertedOrbit inverted_orbit(const ActionOracle& oracle, const IncrementSequence& h, const Point& x);
// Recomputes every composite from scratch. Test oracle only.
InvertedOrbit inverted_orbit_naive(const ActionOracle& oracle, const IncrementSequence& h, const Point& x);

enum class Mode { exact, mc };
const char* mode_name(Mode m);

std::vector<Rational> default_eps_grid();

struct OrbitOptions {
    Mode mode = Mode::exact;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 100000000;  // increment sequences (exact) or DFS nodes (pruned)
    std::size_t threads = 1;
    std::vector<Rational> eps_grid = default_eps_grid();
};

struct TailEstimate {
    Rational eps;
    double value = 0;
    double stderr_ = 0;
    std::optional<Rational> exact;
};

struct OrbitStatistics {
    std::size_t n = 0;
    std::size_t samples = 0;
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;
    double mean_size = 0, mean_size_se = 0;
    double exp2 = 0, exp2_se = 0;  // E 2^{-|O_n|}
    std::optional<Rational> mean_size_exact, exp2_exact;
    std::vector<TailEstimate> tails;
    std::vector<Rational> size_law;        // exact: P(|O_n| = k)
    std::vector<std::uint64_t> size_hist;  // mc: sample counts per size
};

// Law of |O_n(x)| under nu^{(x)n}, index k = size. With cap, only branches whose
// set stays within cap points are explored, so entries k <= cap are exact and
// the rest are zero.
std::vector<Rational> size_law_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                     std::uint64_t budget, std::optional<std::size_t> cap = std::nullopt);

// P(|O_n(x)| <= k), exact, by pruned enumeration
Rational tail_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n, std::size_t k,
                    std::uint64_t budget);

OrbitStatistics orbit_statistics(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                 const OrbitOptions& opts);

// One trajectory per sample serves every n in the grid.
std::vector<OrbitStatistics> orbit_statistics_mc_grid(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                                      const std::vector<std::size_t>& ns, const OrbitOptions& opts);

// P(|O_n| <= eps n) from a statistics record (exact when available)
Rational tail_from_law(const std::vector<Rational>& law, const Rational& eps, std::size_t n);

struct FeketeRow {
    std::size_t n = 0, m = 0;
    double lhs = 0, rhs = 0, slack = 0;  // lhs = P_{n+m}, rhs = P_n P_m
    std::optional<Rational> lhs_exact, rhs_exact;
    bool holds = false;
};

struct FeketeReport {
    Rational eps;
    Mode mode = Mode::exact;
    std::vector<FeketeRow> rows;
    bool ok = true;
};

FeketeReport fekete_check(const ActionOracle& oracle, const RMeasure& nu, const Point& x, const Rational& eps,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const OrbitOptions& opts);

struct SubadditivityReport {
    std::size_t size_concat = 0, size_h = 0, size_t_ = 0;
    bool identity_holds = false;  // O_{(h,t)} = O_t u t_m...t_1 O_h
    bool bound_holds = false;     // |O_{(h,t)}| <= |O_h| + |O_t|
    bool ok() const { return identity_holds && bound_holds; }
};

SubadditivityReport subadditivity_check(const ActionOracle& oracle, const IncrementSequence& h,
                                        const IncrementSequence& t, const Point& x);

}  // namespace rwlab
