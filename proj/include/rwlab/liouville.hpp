#pragma once

#include "rwlab/catalogue.hpp"
#include "rwlab/line_kernel.hpp"
#include "rwlab/measure.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rwlab {

struct TvReport {
    std::size_t n = 0;
    double sup = 0;
    Rational eps;
    std::size_t pairs = 0;  // distinct pairs actually compared
    bool skipped = false;   // over budget
    bool holds = false;     // sup < eps
};

// sup over x, y in K of |delta_x nu - delta_y nu|_1. For an action on itself
// the distance only depends on x^-1 y. budget bounds pairs * |supp nu|.
TvReport tv_condition_check(const ActionOracle& oracle, const FMeasure& nu, const std::vector<Point>& k,
                            const Rational& eps, std::size_t n = 0, std::uint64_t budget = 200000000);

struct CandidateFamily {
    std::string name;
    std::function<RMeasure(std::size_t)> measure;
    std::function<Rational(std::size_t)> eps;
};

// nu_n uniform on {T^k : |k| <= n^2}, eps_n = 2/n
CandidateFamily shift_uniform_family(OraclePtr oracle, const Element& t);

struct SynthConfig {
    OraclePtr oracle;
    Element t;
    RMeasure nu0;
    std::vector<Rational> weights;  // c_0 .. c_J
    CandidateFamily family;
    std::size_t depth = 3;
    std::vector<Point> basepoints;  // defaults to the oracle base point
    std::size_t n_max = 100000;     // exhaustion range
    std::size_t s_budget = 100000;  // |S_j|
    std::size_t support_budget = 10000000;
    std::uint64_t tv_budget = 200000000;
};

// c_j = 2^-(j+1), j = 0..depth
std::vector<Rational> geometric_weights(std::size_t depth);

struct SynthStep {
    std::size_t j = 0;
    std::size_t m = 0;
    bool m_minimal = false;
    Rational prefix;          // c_0 + ... + c_{j-1}
    std::size_t theta_atoms = 0;
    Rational theta_error;     // |nu0 - theta_j|_1
    Rational theta_bound;     // 1 / (j m_j)
    bool theta_ok = false;
    Rational surrogate_bound; // m_j |nu0 - theta_j|_1, dominates every ordering
    bool surrogate_ok = false;
    std::size_t s_count = 0;
    std::size_t support_union = 0;
    std::size_t n = 0;
    bool containment_ok = false;
    TvReport tv;
};

struct SynthState {
    std::vector<std::size_t> ns;  // n_0 .. n_J
    std::vector<SynthStep> steps;
    std::vector<Rational> mixture_weights;
    Rational tail_mass;  // 1 - (c_0 + ... + c_J), dropped by normalization
    bool ok = false;
};

struct SynthResult {
    RMeasure nu;
    SynthState state;
};

SynthResult synthesize(const SynthConfig& config);

struct ProbeRow {
    std::size_t m = 0;
    double distance = 0;
    double error = 0;
};

struct ProbeCheck {
    std::size_t j = 0, m = 0;
    double distance = 0, error = 0, bound = 0;
    std::string verdict;  // pass, fail, inconclusive
};

struct ProbeReport {
    std::vector<ProbeRow> rows;
    double min_distance = 0;
    std::string trend;  // decreasing, nonincreasing, mixed
    std::vector<ProbeCheck> checks;
};

// Iterates delta_x nu^m and delta_y nu^m with a support cap; truncated mass
// is the error bar.
ProbeReport liouville_probe(const ActionOracle& oracle, const FMeasure& nu, const Point& x, const Point& y,
                            std::size_t m_max, std::size_t cap = 1000000);
// Same on the integer line through the dense kernel.
ProbeReport liouville_probe_line(const LineDistribution& nu, std::int64_t x, std::int64_t y, std::size_t m_max);
LineDistribution line_measure(const RMeasure& nu);

// bound 4/j + eps_{n_j} at m = m_j, distance within error counts as pass
void probe_bounds(ProbeReport& probe, const SynthState& state, const CandidateFamily& family);

struct DefectRow {
    std::size_t n = 0;
    std::vector<std::size_t> members;
    Rational mass;
    Rational bound;  // n^3 / 2^n
    bool flagged = false;
};

// B_n = {x : f_n^k x != T^k x for some |k| <= n^2 + n}
std::vector<DefectRow> defect_sets(const FiniteRelationSpace& space, const Permutation& t,
                                   const std::vector<std::pair<std::size_t, Permutation>>& approximants);

struct ContainmentDefect {
    std::vector<std::size_t> members;
    Rational mass;
};

// D = {x : g K_{n_prev}(x) not inside K_n(x) for some g}
ContainmentDefect containment_defect(const FiniteRelationSpace& space, const Permutation& t,
                                     const std::vector<Permutation>& gs, std::size_t n_prev, std::size_t n);

}  // namespace rwlab
