#pragma once

#include "rwlab/decay.hpp"
#include "rwlab/inverted_orbit.hpp"
#include "rwlab/lamplighter.hpp"
#include "rwlab/liouville.hpp"
#include "rwlab/spectral.hpp"

#include <json.hpp>

#include <string>

namespace rwlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "rwlab.report/1";
inline constexpr const char* artifact_version = "1.0.0";

Json envelope(const std::string& command, const Json& spec);
// {"mode":"exact","value":...,"rational":"p/q"}
Json exact_value(const Rational& q);
// {"mode":"mc","value":...,"stderr":...}
Json mc_value(double value, double stderr_);
// {"mode":"float","value":...}
Json float_value(double value);

Json to_json(const OrbitStatistics& st);
Json to_json(const FeketeReport& rep);
Json to_json(const SubadditivityReport& rep);
Json to_json(const IdentityReport& rep);
Json to_json(const InequalityReport& rep);
Json to_json(const ProbLemmaReport& rep);
Json to_json(const WitnessReport& rep);
Json to_json(const DecayRateEstimate& est);
Json to_json(const SpectralReport& rep);
Json to_json(const MoharReport& rep);
Json to_json(const Expansion& e);
Json to_json(const KestenDecayReport& rep);
Json to_json(const TvReport& rep);
Json to_json(const SynthState& st);
Json to_json(const ProbeReport& rep);
Json to_json(const DefectRow& row);

std::string dump(const Json& j);

}  // namespace rwlab
