#pragma once

#include "rwlab/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rwlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;
    Json report;  // deterministic; no timings
    double seconds = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20261019;
    std::size_t threads = 1;
    std::vector<int> only;  // empty = all
};

constexpr int criterion_count = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
// Runs the selected criteria in order; criterion 12 reruns the Monte Carlo ones.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_done = {});
std::string format_result(const CriterionResult& r);

}  // namespace rwlab
