#include "qamp/serialize.hpp"

#include <fstream>

namespace qamp {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw ValidationError("schema: " + what);
}

const json& expect(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        schema_error(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

json family_to_json(const MagnitudeFamily& family) {
    json mags = json::array();
    for (const auto& m : family.magnitudes()) {
        json jm{{"name", m.name}, {"values", m.values}};
        if (!m.numeric.empty()) jm["numeric"] = m.numeric;
        mags.push_back(std::move(jm));
    }
    return json{{"magnitudes", std::move(mags)}};
}

MagnitudeFamily family_from_json(const json& j) {
    const json& mags = expect(j, "magnitudes");
    if (!mags.is_array()) schema_error("'magnitudes' must be an array");
    std::vector<Magnitude> out;
    out.reserve(mags.size());
    try {
        for (const auto& jm : mags) {
            Magnitude m;
            m.name = expect(jm, "name").get<std::string>();
            m.values = expect(jm, "values").get<std::vector<std::string>>();
            if (jm.contains("numeric"))
                m.numeric = jm.at("numeric").get<std::vector<double>>();
            out.push_back(std::move(m));
        }
        return MagnitudeFamily(std::move(out));
    } catch (const json::exception& e) {
        schema_error(e.what());
    }
}

json distribution_to_json(const AmplitudeDistribution& Z) {
    json amps = json::array();
    for (const auto& q : Z.materialize())
        amps.push_back(json::array({q.w, q.x, q.y, q.z}));
    return json{{"family", family_to_json(Z.family())}, {"amplitudes", std::move(amps)}};
}

AmplitudeDistribution distribution_from_json(const json& j) {
    MagnitudeFamily family = family_from_json(expect(j, "family"));
    const json& amps = expect(j, "amplitudes");
    if (!amps.is_array()) schema_error("'amplitudes' must be an array");
    if (amps.size() != family.cardinality())
        schema_error("amplitude count " + std::to_string(amps.size()) +
                     " does not match family cardinality " +
                     std::to_string(family.cardinality()));
    std::vector<Quaternion> table;
    table.reserve(amps.size());
    try {
        for (const auto& q : amps) {
            if (!q.is_array() || q.size() != 4)
                schema_error("each amplitude must be a [w,x,y,z] 4-tuple");
            table.push_back({q[0].get<double>(), q[1].get<double>(),
                             q[2].get<double>(), q[3].get<double>()});
        }
    } catch (const json::exception& e) {
        schema_error(e.what());
    }
    return {std::move(family), std::move(table)};
}

DirectionSet directions_from_json(const json& j) {
    const json& list = j.is_object() && j.contains("directions") ? j.at("directions") : j;
    if (!list.is_array() || list.empty())
        schema_error("directions: expected a non-empty array");
    try {
        if (list.front().is_number()) {
            return DirectionSet::from_planar_angles_deg(list.get<std::vector<double>>());
        }
        std::vector<Direction> dirs;
        dirs.reserve(list.size());
        for (const auto& v : list) {
            if (!v.is_array() || v.size() != 3)
                schema_error("directions: each entry must be a 3-vector or an angle");
            dirs.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
        }
        return DirectionSet(std::move(dirs));
    } catch (const json::exception& e) {
        schema_error(e.what());
    }
}

std::vector<CorrespondenceTarget> targets_from_json(const json& j,
                                                    const MagnitudeFamily& family) {
    const json& list = j.is_object() && j.contains("targets") ? j.at("targets") : j;
    if (!list.is_array()) schema_error("targets: expected an array");
    std::vector<CorrespondenceTarget> out;
    out.reserve(list.size());
    try {
        for (const auto& jt : list) {
            const auto names = expect(jt, "magnitudes").get<std::vector<std::string>>();
            Subfamily sub = Subfamily::by_names(family, names);
            const json& amps = expect(jt, "amplitudes");
            if (!amps.is_array() || amps.size() != sub.space().cardinality())
                schema_error("target amplitude count does not match the "
                             "subfamily's configuration space");
            std::vector<Quaternion> z;
            z.reserve(amps.size());
            for (const auto& c : amps) {
                if (!c.is_array() || c.size() != 2)
                    schema_error("target amplitudes must be [re,im] pairs");
                z.push_back({c[0].get<double>(), c[1].get<double>(), 0.0, 0.0});
            }
            out.emplace_back(std::move(sub), std::move(z));
        }
    } catch (const json::exception& e) {
        schema_error(e.what());
    }
    return out;
}

json residual_report_to_json(const ResidualReport& report) {
    json targets = json::array();
    for (const auto& t : report.targets)
        targets.push_back(json{{"scale", t.scale},
                               {"residuals", t.residuals},
                               {"max_residual", t.max_residual}});
    return json{{"targets", std::move(targets)}, {"max_residual", report.max_residual}};
}

SampleRequest sample_request_from_json(const json& j) {
    AmplitudeDistribution state = distribution_from_json(expect(j, "state"));
    const auto context_names = expect(j, "context").get<std::vector<std::string>>();
    Subfamily context = Subfamily::by_names(state.family(), context_names);

    std::vector<CorrelationConstraint> constraints;
    if (j.contains("constraints")) {
        for (const auto& jc : j.at("constraints")) {
            const auto names = expect(jc, "magnitudes").get<std::vector<std::string>>();
            if (names.size() != 2)
                schema_error("each constraint names exactly 2 magnitudes");
            constraints.push_back({state.family().index_of(names[0]),
                                   state.family().index_of(names[1]),
                                   expect(jc, "sum").get<double>()});
        }
    }
    EnsembleSpec spec{std::move(state), std::move(constraints),
                      expect(j, "seed").get<std::uint64_t>(),
                      expect(j, "n").get<std::uint64_t>()};
    return {std::move(spec), std::move(context)};
}

json frequency_report_to_json(const FrequencyReport& r) {
    return json{{"context", r.context},
                {"counts", r.counts},
                {"frequencies", r.frequencies},
                {"born", r.born},
                {"max_abs_deviation", r.max_abs_deviation},
                {"stderr_bound", r.stderr_bound},
                {"within_bound", r.within_bound},
                {"seed", r.seed},
                {"n", r.sample_count},
                {"worker_count", r.worker_count},
                {"generator", r.generator}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace qamp
