#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qamp/amplitude.hpp"
#include "qamp/correspondence.hpp"
#include "qamp/sampler.hpp"
#include "qamp/spin.hpp"

namespace qamp {

using json = nlohmann::json;

// Family: {"magnitudes":[{"name":"S1","values":["+","-"],"numeric":[1,-1]},...]}
json family_to_json(const MagnitudeFamily& family);
MagnitudeFamily family_from_json(const json& j);

// Dense distribution: {"family": ..., "amplitudes": [[w,x,y,z], ...]} in
// canonical packing order.
json distribution_to_json(const AmplitudeDistribution& Z);
AmplitudeDistribution distribution_from_json(const json& j);

// Direction sets: either a list of 3-vectors or a list of planar angles
// in degrees (xz-plane).
DirectionSet directions_from_json(const json& j);

// Targets: [{"magnitudes": ["S1","S2"], "amplitudes": [[re,im], ...]}, ...]
// (also accepted wrapped as {"targets": [...]}). Amplitudes are complex
// pairs in the canonical packing of the listed magnitudes.
std::vector<CorrespondenceTarget> targets_from_json(const json& j,
                                                    const MagnitudeFamily& family);

json residual_report_to_json(const ResidualReport& report);

// Ensemble spec:
// {"state": <distribution>, "context": ["S1_a","S1_b"],
//  "constraints": [{"magnitudes": ["S1_a","S1_b"], "sum": 0}],
//  "seed": 1, "n": 1000000}
struct SampleRequest {
    EnsembleSpec spec;
    Subfamily context;
};
SampleRequest sample_request_from_json(const json& j);

json frequency_report_to_json(const FrequencyReport& report);

// File helpers; parse and validation failures surface as ValidationError.
json load_json_file(const std::string& path);

}  // namespace qamp
