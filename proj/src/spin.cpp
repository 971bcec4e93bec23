#include "qamp/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace qamp {

namespace {

MagnitudeFamily spin_family(std::size_t count, const char* suffix) {
    std::vector<Magnitude> mags;
    mags.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        mags.push_back({"S" + std::to_string(j + 1) + suffix, {"+", "-"}, {1.0, -1.0}});
    return MagnitudeFamily(std::move(mags));
}

MagnitudeFamily spin_pair_family(std::size_t count) {
    std::vector<Magnitude> mags;
    mags.reserve(2 * count);
    for (std::size_t j = 0; j < count; ++j)
        mags.push_back({"S" + std::to_string(j + 1) + "_a", {"+", "-"}, {1.0, -1.0}});
    for (std::size_t j = 0; j < count; ++j)
        mags.push_back({"S" + std::to_string(j + 1) + "_b", {"+", "-"}, {1.0, -1.0}});
    return MagnitudeFamily(std::move(mags));
}

}  // namespace

DirectionSet::DirectionSet(std::vector<Direction> directions)
    : directions_(std::move(directions)) {
    if (directions_.empty())
        throw ValidationError("DirectionSet: at least one direction required");
    for (std::size_t i = 0; i < directions_.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            // n and -n carry the same magnitude; near-parallel pairs also make
            // the cancellation sums ill-conditioned.
            if (1.0 - std::fabs(directions_[i].dot(directions_[k])) < kDistinctTol)
                throw ValidationError(
                    "DirectionSet: directions " + std::to_string(k) + " and " +
                    std::to_string(i) + " coincide up to sign");
        }
    }
    axes_.reserve(directions_.size());
    for (const auto& d : directions_) axes_.push_back(from_direction(d));
    single_ = spin_family(directions_.size(), "");
    pair_ = spin_pair_family(directions_.size());
}

DirectionSet DirectionSet::from_planar_angles_deg(const std::vector<double>& degrees) {
    std::vector<Direction> dirs;
    dirs.reserve(degrees.size());
    for (double deg : degrees) {
        const double rad = deg * std::numbers::pi / 180.0;
        dirs.push_back(Direction::normalized(std::sin(rad), 0.0, std::cos(rad)));
    }
    return DirectionSet(std::move(dirs));
}

Quaternion spin_amplitude(std::uint64_t packed, const DirectionSet& dirs) {
    Quaternion acc;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        const double s = ((packed >> j) & 1u) == 0 ? 1.0 : -1.0;
        acc += dirs.axis(j) * s;
    }
    return acc;
}

Quaternion spin_amplitude(const Configuration& lambda, const DirectionSet& dirs) {
    if (!lambda.family.same_family(dirs.single_particle_family()))
        throw ValidationError("spin_amplitude: configuration is not over this "
                              "direction set's K binary spin magnitudes");
    return spin_amplitude(lambda.packed, dirs);
}

AmplitudeDistribution known_spin_state(const DirectionSet& dirs, std::size_t j, int s) {
    if (j >= dirs.size())
        throw ValidationError("known_spin_state: direction index out of range");
    if (s != 1 && s != -1)
        throw ValidationError("known_spin_state: spin value must be +1 or -1");
    const std::uint64_t want = s > 0 ? 0u : 1u;
    return {dirs.single_particle_family(), [dirs, j, want](std::uint64_t packed) {
                if (((packed >> j) & 1u) != want) return Quaternion{};
                return spin_amplitude(packed, dirs);
            }};
}

AmplitudeDistribution singlet_state(const DirectionSet& dirs) {
    const std::size_t k = dirs.size();
    return {dirs.pair_family(), [dirs, k](std::uint64_t packed) {
                const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
                return spin_amplitude(packed & mask, dirs) -
                       spin_amplitude(packed >> k, dirs);
            }};
}

Subfamily pair_subfamily(const DirectionSet& dirs, std::size_t i, std::size_t j) {
    if (i >= dirs.size() || j >= dirs.size())
        throw ValidationError("pair_subfamily: direction index out of range");
    return Subfamily(dirs.pair_family(), {i, dirs.size() + j});
}

ProbabilityTable joint_spin_probability(const DirectionSet& dirs, std::size_t i,
                                        std::size_t j) {
    return born_probabilities(singlet_state(dirs), pair_subfamily(dirs, i, j));
}

double correlation(const DirectionSet& dirs, std::size_t i, std::size_t j) {
    return pair_correlation(joint_spin_probability(dirs, i, j));
}

double chsh(const DirectionSet& dirs, std::size_t a, std::size_t a2, std::size_t b,
            std::size_t b2) {
    return correlation(dirs, a, b) - correlation(dirs, a, b2) +
           correlation(dirs, a2, b) + correlation(dirs, a2, b2);
}

double formal_chsh(const DirectionSet& dirs, std::size_t a, std::size_t a2,
                   std::size_t b, std::size_t b2) {
    const std::size_t k = dirs.size();
    if (a >= k || a2 >= k || b >= k || b2 >= k)
        throw ValidationError("formal_chsh: direction index out of range");
    // Parent indices of the four measured magnitudes, deduplicated so that
    // degenerate quadruples (a == a', b == b') still form a valid subfamily.
    std::vector<std::size_t> fine;
    for (std::size_t idx : {a, a2, k + b, k + b2})
        if (std::find(fine.begin(), fine.end(), idx) == fine.end()) fine.push_back(idx);
    const Subfamily sub_fine(dirs.pair_family(), fine);
    const ProbabilityTable formal =
        formal_probabilities(marginalize(singlet_state(dirs), sub_fine));

    auto position = [&](std::size_t parent_idx) {
        return static_cast<std::size_t>(
            std::find(fine.begin(), fine.end(), parent_idx) - fine.begin());
    };
    auto e_formal = [&](std::size_t ai, std::size_t bi) {
        const Subfamily pair_sub(formal.family, {position(ai), position(k + bi)});
        return pair_correlation(marginal_probability(formal, pair_sub));
    };
    return e_formal(a, b) - e_formal(a, b2) + e_formal(a2, b) + e_formal(a2, b2);
}

std::vector<CorrelationConstraint> singlet_constraints(const DirectionSet& dirs) {
    std::vector<CorrelationConstraint> out;
    out.reserve(dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j)
        out.push_back({j, dirs.size() + j, 0.0});
    return out;
}

bool satisfies_constraints(const Configuration& lambda,
                           const std::vector<CorrelationConstraint>& constraints) {
    for (const auto& c : constraints) {
        const auto& mi = lambda.family.magnitude(c.magnitude_i);
        const auto& mj = lambda.family.magnitude(c.magnitude_j);
        if (mi.numeric.empty() || mj.numeric.empty())
            throw ValidationError("correlation constraint references a magnitude "
                                  "without numeric values");
        const double sum = mi.numeric[lambda.digit(c.magnitude_i)] +
                           mj.numeric[lambda.digit(c.magnitude_j)];
        if (std::fabs(sum - c.required_sum) > 1e-9) return false;
    }
    return true;
}

}  // namespace qamp
