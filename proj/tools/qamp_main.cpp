// qamp — extended-phase-space quantum amplitude toolkit, command line.
//
// Exit codes: 0 success, 1 threshold/assertion failure, 2 usage or input
// error. Outputs are deterministic for a fixed flag set and seed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qamp/correspondence.hpp"
#include "qamp/oracle.hpp"
#include "qamp/parallel.hpp"
#include "qamp/sampler.hpp"
#include "qamp/serialize.hpp"
#include "qamp/spin.hpp"
#include "qamp/twoslit.hpp"

namespace {

using namespace qamp;

constexpr int kExitOk = 0;
constexpr int kExitThreshold = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file: " + out_path);
    out << text;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& spec,
                                                             std::size_t count) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (spec.empty()) {
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i; j < count; ++j) pairs.emplace_back(i, j);
        return pairs;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw ValidationError("--pairs entries must look like i-j");
        const std::size_t i = std::stoul(item.substr(0, dash));
        const std::size_t j = std::stoul(item.substr(dash + 1));
        if (i >= count || j >= count)
            throw ValidationError("--pairs index out of range");
        pairs.emplace_back(i, j);
    }
    if (pairs.empty()) throw ValidationError("--pairs is empty");
    return pairs;
}

double angle_between_deg(const Direction& a, const Direction& b) {
    const double c = std::clamp(a.dot(b), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

int cmd_spin_corr(const std::string& directions_path, const std::string& pairs_spec,
                  const std::string& out_path, double tol, int threads) {
    const DirectionSet dirs = directions_from_json(load_json_file(directions_path));
    const auto pairs = parse_pairs(pairs_spec, dirs.size());
    std::ostringstream csv;
    csv << "# qamp spin-corr --directions " << directions_path;
    if (!pairs_spec.empty()) csv << " --pairs " << pairs_spec;
    csv << " --tol " << fmt(tol) << " --threads " << threads << "\n";
    csv << "theta,E_model,E_oracle,max_prob_diff\n";
    bool breached = false;
    for (const auto& [i, j] : pairs) {
        const ProbabilityTable model = joint_spin_probability(dirs, i, j);
        double max_diff = 0.0;
        for (std::uint64_t p = 0; p < 4; ++p) {
            const int sa = model.family.digit(p, 0) == 0 ? 1 : -1;
            const int sb = model.family.digit(p, 1) == 0 ? 1 : -1;
            const double reference =
                oracle::singlet_joint(dirs.direction(i), dirs.direction(j), sa, sb);
            max_diff = std::max(max_diff,
                                std::fabs(model.probabilities[p] - reference));
        }
        const double e_model = pair_correlation(model);
        const double e_oracle =
            oracle::singlet_correlation(dirs.direction(i), dirs.direction(j));
        breached = breached || max_diff > tol;
        csv << fmt(angle_between_deg(dirs.direction(i), dirs.direction(j))) << ","
            << fmt(e_model) << "," << fmt(e_oracle) << "," << fmt(max_diff) << "\n";
    }
    write_output(out_path, csv.str());
    return breached ? kExitThreshold : kExitOk;
}

int cmd_chsh(const std::vector<double>& angles_deg, const std::string& out_path,
             double tol, int threads) {
    const DirectionSet dirs = DirectionSet::from_planar_angles_deg(angles_deg);
    const double model = chsh(dirs, 0, 1, 2, 3);
    const double formal = formal_chsh(dirs, 0, 1, 2, 3);
    const double reference = oracle::chsh(dirs.direction(0), dirs.direction(1),
                                          dirs.direction(2), dirs.direction(3));
    json out{{"angles_deg", angles_deg},
             {"chsh_model", model},
             {"chsh_formal", formal},
             {"chsh_oracle", reference},
             {"tol", tol},
             {"threads", threads}};
    write_output(out_path, out.dump(2) + "\n");
    return std::fabs(model - reference) <= tol ? kExitOk : kExitThreshold;
}

int cmd_two_slit(double d, double wavelength, double screen_distance,
                 std::size_t screen_points, std::size_t phases,
                 std::optional<double> plate, const std::string& out_path,
                 int threads) {
    const SlitGeometry geom(d, wavelength, screen_distance);
    const Screen screen = Screen::uniform(0.25 * geom.screen_distance, screen_points);
    const AmplitudeDistribution state = build_state(geom, screen);
    const ProbabilityTable interference = diffraction_pattern(state);
    const ProbabilityTable decohered = decohered_pattern(state, phases);
    const ProbabilityTable left = single_slit_pattern(state, Slit::Left);
    const ProbabilityTable right = single_slit_pattern(state, Slit::Right);
    std::optional<ProbabilityTable> shifted;
    if (plate) shifted = diffraction_pattern(phase_plate(state, *plate));

    std::ostringstream csv;
    csv << "# qamp two-slit --d " << fmt(d) << " --wavelength " << fmt(wavelength)
        << " --screen-distance " << fmt(screen_distance) << " --screen-points "
        << screen_points << " --phases " << phases;
    if (plate) csv << " --plate " << fmt(*plate);
    csv << " --threads " << threads << "\n";
    csv << "r,P_interference,P_decohered,P_left_only,P_right_only";
    if (shifted) csv << ",P_plate";
    csv << "\n";
    for (std::size_t i = 0; i < screen.positions.size(); ++i) {
        csv << fmt(screen.positions[i]) << "," << fmt(interference.probabilities[i])
            << "," << fmt(decohered.probabilities[i]) << ","
            << fmt(left.probabilities[i]) << "," << fmt(right.probabilities[i]);
        if (shifted) csv << "," << fmt(shifted->probabilities[i]);
        csv << "\n";
    }
    write_output(out_path, csv.str());
    return kExitOk;
}

int cmd_correspond(const std::string& state_path, const std::string& targets_path,
                   const std::string& out_path, double tol) {
    const AmplitudeDistribution state =
        distribution_from_json(load_json_file(state_path));
    const auto targets = targets_from_json(load_json_file(targets_path), state.family());
    if (targets.empty()) throw ValidationError("targets file lists no targets");
    const ResidualReport report = check_projective(state, targets);
    json out = residual_report_to_json(report);
    out["tol"] = tol;
    write_output(out_path, out.dump(2) + "\n");
    return report.max_residual <= tol ? kExitOk : kExitThreshold;
}

int cmd_sample(const std::string& spec_path, std::optional<std::uint64_t> seed,
               std::optional<std::uint64_t> n, const std::string& out_path,
               int threads) {
    SampleRequest request = sample_request_from_json(load_json_file(spec_path));
    if (seed) request.spec.seed = *seed;
    if (n) request.spec.sample_count = *n;
    const FrequencyReport report =
        sample(request.spec, request.context, static_cast<unsigned>(threads));
    write_output(out_path, frequency_report_to_json(report).dump(2) + "\n");
    return report.within_bound ? kExitOk : kExitThreshold;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended-phase-space quantum amplitudes: spin correlations, "
                 "CHSH, two-slit decoherence, correspondence checks, sampling"};
    app.require_subcommand(1);

    std::string out_path;
    int threads = 1;
    app.add_option("--out", out_path, "Output file (default: stdout)")->capture_default_str();
    app.add_option("--threads", threads, "Worker cap for internal reductions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* spin_corr = app.add_subcommand(
        "spin-corr", "Singlet correlations per direction pair, model vs oracle (CSV)");
    spin_corr->fallthrough();
    std::string directions_path, pairs_spec;
    double spin_tol = 1e-12;
    spin_corr->add_option("--directions", directions_path, "Direction set JSON file")
        ->required();
    spin_corr->add_option("--pairs", pairs_spec,
                          "Comma-separated i-j index pairs (default: all i<=j)");
    spin_corr->add_option("--tol", spin_tol, "Max allowed |model - oracle| per entry")
        ->capture_default_str();

    auto* chsh_cmd = app.add_subcommand(
        "chsh", "CHSH at four coplanar angles: model, formal and oracle values (JSON)");
    chsh_cmd->fallthrough();
    std::vector<double> angles;
    double chsh_tol = 1e-9;
    chsh_cmd->add_option("--angles", angles, "a,a',b,b' in degrees (xz-plane)")
        ->delimiter(',')
        ->expected(4)
        ->required();
    chsh_cmd->add_option("--tol", chsh_tol, "Max allowed |model - oracle|")
        ->capture_default_str();

    auto* two_slit = app.add_subcommand(
        "two-slit", "Diffraction, decoherence and single-slit patterns (CSV)");
    two_slit->fallthrough();
    double d = 5.0, wavelength = 1.0, screen_distance = 1000.0;
    std::size_t screen_points = 501, phases = 8;
    std::optional<double> plate;
    two_slit->add_option("--d", d, "Slit separation")->capture_default_str();
    two_slit->add_option("--wavelength", wavelength, "Wavelength")->capture_default_str();
    two_slit->add_option("--screen-distance", screen_distance, "Screen distance")
        ->capture_default_str();
    two_slit->add_option("--screen-points", screen_points, "Screen sample count")
        ->capture_default_str();
    two_slit->add_option("--phases", phases, "Phase-average grid size")
        ->capture_default_str();
    two_slit->add_option("--plate", plate,
                         "Also emit the pattern with this phase shift (radians) "
                         "applied at the right slit");

    auto* correspond = app.add_subcommand(
        "correspond", "Projective correspondence residuals of a state against "
                      "orthodox targets (JSON)");
    correspond->fallthrough();
    std::string state_path, targets_path;
    double correspond_tol = 1e-12;
    correspond->add_option("--state", state_path, "Dense state JSON file")->required();
    correspond->add_option("--targets", targets_path, "Targets JSON file")->required();
    correspond->add_option("--tol", correspond_tol, "Max allowed residual")
        ->capture_default_str();

    auto* sample_cmd = app.add_subcommand(
        "sample", "Seeded per-context sampling with frequency report (JSON)");
    sample_cmd->fallthrough();
    std::string spec_path;
    std::optional<std::uint64_t> seed_override, n_override;
    sample_cmd->add_option("--spec", spec_path, "Ensemble spec JSON file")->required();
    sample_cmd->add_option("--seed", seed_override, "Override the spec file's seed");
    sample_cmd->add_option("--n", n_override, "Override the spec file's sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        set_max_threads(threads);
        if (spin_corr->parsed())
            return cmd_spin_corr(directions_path, pairs_spec, out_path, spin_tol, threads);
        if (chsh_cmd->parsed()) return cmd_chsh(angles, out_path, chsh_tol, threads);
        if (two_slit->parsed())
            return cmd_two_slit(d, wavelength, screen_distance, screen_points, phases,
                                plate, out_path, threads);
        if (correspond->parsed())
            return cmd_correspond(state_path, targets_path, out_path, correspond_tol);
        if (sample_cmd->parsed())
            return cmd_sample(spec_path, seed_override, n_override, out_path, threads);
    } catch (const ModelInconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitThreshold;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
