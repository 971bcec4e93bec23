#include "qamp/twoslit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qamp/parallel.hpp"

namespace qamp {

SlitGeometry::SlitGeometry(double d, double w, double lz)
    : slit_separation(d), wavelength(w), screen_distance(lz) {
    if (!(d > 0.0) || !(w > 0.0) || !(lz > 0.0))
        throw ValidationError("SlitGeometry: separation, wavelength and screen "
                              "distance must be positive");
}

double SlitGeometry::path_length(Slit s, double r) const {
    const double dr = r - slit_position(s);
    return std::sqrt(screen_distance * screen_distance + dr * dr);
}

SlitGeometry default_geometry() { return {5.0, 1.0, 1000.0}; }

Screen::Screen(std::vector<double> pos) : positions(std::move(pos)) {
    if (positions.empty()) throw ValidationError("Screen: no positions");
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (!(positions[i] > positions[i - 1]))
            throw ValidationError("Screen: positions must be strictly increasing");
}

Screen Screen::uniform(double half_span, std::size_t count) {
    if (count < 2) throw ValidationError("Screen: need at least 2 points");
    std::vector<double> pos(count);
    for (std::size_t i = 0; i < count; ++i)
        pos[i] = -half_span + 2.0 * half_span * static_cast<double>(i) /
                                  static_cast<double>(count - 1);
    return Screen(std::move(pos));
}

Screen default_screen(const SlitGeometry& geom) {
    return Screen::uniform(0.25 * geom.screen_distance, 501);
}

Quaternion slit_amplitude(Slit slit, double r, const SlitGeometry& geom) {
    const double rho = geom.path_length(slit, r);
    const double k = 2.0 * std::numbers::pi / geom.wavelength;
    return from_phase(k * rho) * (1.0 / rho);
}

AmplitudeDistribution build_state(const SlitGeometry& geom, const Screen& screen) {
    std::vector<std::string> labels(screen.positions.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "r" + std::to_string(i);
    MagnitudeFamily family({{"slit", {"L", "R"}, {}},
                            {"position", std::move(labels), screen.positions}});
    std::vector<Quaternion> table(family.cardinality());
    for (std::size_t i = 0; i < screen.positions.size(); ++i) {
        table[2 * i] = slit_amplitude(Slit::Left, screen.positions[i], geom);
        table[2 * i + 1] = slit_amplitude(Slit::Right, screen.positions[i], geom);
    }
    return {std::move(family), std::move(table)};
}

Subfamily position_subfamily(const MagnitudeFamily& slit_screen_family) {
    return Subfamily(slit_screen_family, {slit_screen_family.index_of("position")});
}

ProbabilityTable diffraction_pattern(const AmplitudeDistribution& Z) {
    return born_probabilities(Z, position_subfamily(Z.family()));
}

AmplitudeDistribution phase_plate(const AmplitudeDistribution& Z, double phi) {
    const MagnitudeFamily& family = Z.family();
    const std::size_t slit_idx = family.index_of("slit");
    const Quaternion shift = from_phase(phi);
    std::vector<Quaternion> table = Z.materialize();
    for (std::uint64_t p = 0; p < table.size(); ++p)
        if (family.digit(p, slit_idx) == 1) table[p] = shift * table[p];
    return {family, std::move(table)};
}

ProbabilityTable decohered_pattern(const AmplitudeDistribution& Z, std::size_t m_phases) {
    if (m_phases < 2)
        throw ValidationError("decohered_pattern: need at least 2 phase samples");
    const Subfamily pos_sub = position_subfamily(Z.family());
    const std::uint64_t entries = pos_sub.space().cardinality();
    std::vector<KahanSum> mean(entries);
    for (std::size_t k = 0; k < m_phases; ++k) {
        const double phi =
            -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(m_phases);
        const AmplitudeDistribution marginal = marginalize(phase_plate(Z, phi), pos_sub);
        for (std::uint64_t i = 0; i < entries; ++i)
            mean[i].add(norm_sq(marginal.table()[i]));
    }
    std::vector<double> p(entries);
    KahanSum total;
    for (std::uint64_t i = 0; i < entries; ++i) {
        p[i] = mean[i].value();
        total.add(p[i]);
    }
    if (total.value() <= 0.0)
        throw DegenerateStateError("decohered pattern vanishes identically");
    for (double& v : p) v /= total.value();
    return {pos_sub.space(), std::move(p)};
}

ProbabilityTable single_slit_pattern(const AmplitudeDistribution& Z, Slit which) {
    const MagnitudeFamily& family = Z.family();
    const std::size_t slit_idx = family.index_of("slit");
    const std::uint32_t keep = which == Slit::Left ? 0u : 1u;
    std::vector<Quaternion> table = Z.materialize();
    for (std::uint64_t p = 0; p < table.size(); ++p)
        if (family.digit(p, slit_idx) != keep) table[p] = Quaternion{};
    return diffraction_pattern({family, std::move(table)});
}

double fringe_visibility(const ProbabilityTable& pattern, const ProbabilityTable& baseline) {
    if (pattern.probabilities.size() != baseline.probabilities.size())
        throw ValidationError("fringe_visibility: pattern and baseline sizes differ");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pattern.probabilities.size(); ++i) {
        const double b = baseline.probabilities[i];
        if (b <= 0.0) continue;
        const double ratio = pattern.probabilities[i] / b;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (!(hi > 0.0)) return 0.0;
    return (hi - lo) / (hi + lo);
}

}  // namespace qamp
