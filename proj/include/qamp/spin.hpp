#pragma once

#include <cstddef>
#include <vector>

#include "qamp/amplitude.hpp"
#include "qamp/config_space.hpp"
#include "qamp/quaternion.hpp"

namespace qamp {

/// The K measurement directions of a spin-1/2 phase space, with their
/// pure quaternions N_j precomputed. A direction and its opposite carry
/// the same magnitude (S_{-n} = -S_n), so near-duplicates up to sign are
/// rejected.
class DirectionSet {
  public:
    static constexpr double kDistinctTol = 1e-9;

    explicit DirectionSet(std::vector<Direction> directions);

    /// Angles in degrees, measured from +z in the xz-plane:
    /// theta -> (sin theta, 0, cos theta).
    static DirectionSet from_planar_angles_deg(const std::vector<double>& degrees);

    std::size_t size() const { return directions_.size(); }
    const Direction& direction(std::size_t j) const { return directions_[j]; }
    const Quaternion& axis(std::size_t j) const { return axes_[j]; }

    /// K binary magnitudes "S1".."SK" with values "+","-" and numeric
    /// +1,-1. Digit 0 is spin up.
    const MagnitudeFamily& single_particle_family() const { return single_; }

    /// 2K binary magnitudes: particle a's "S1_a".."SK_a" first (least
    /// significant), then particle b's "S1_b".."SK_b".
    const MagnitudeFamily& pair_family() const { return pair_; }

  private:
    std::vector<Direction> directions_;
    std::vector<Quaternion> axes_;
    MagnitudeFamily single_;
    MagnitudeFamily pair_;
};

/// Spin sign of digit d under the "+"-first convention.
constexpr double spin_sign(std::uint32_t digit) { return digit == 0 ? 1.0 : -1.0; }

/// Z(lambda) = sum_j s_j N_j over the K bits of `packed`.
Quaternion spin_amplitude(std::uint64_t packed, const DirectionSet& dirs);

/// Validated form; lambda must live over exactly K binary magnitudes.
Quaternion spin_amplitude(const Configuration& lambda, const DirectionSet& dirs);

/// The state with known spin s in direction j: Z on the fiber
/// pi_j(lambda) = s, zero elsewhere. Lazy.
AmplitudeDistribution known_spin_state(const DirectionSet& dirs, std::size_t j, int s);

/// Two-particle total-spin-zero state over the pair family:
/// Z_T(l_a, l_b) = Z(l_a) - Z(l_b). Lazy; never materialized internally.
AmplitudeDistribution singlet_state(const DirectionSet& dirs);

/// Subfamily of the pair family selecting direction i on particle a and
/// direction j on particle b, in that order.
Subfamily pair_subfamily(const DirectionSet& dirs, std::size_t i, std::size_t j);

/// Born table of the singlet for measuring direction i on particle a and
/// direction j on particle b. 2x2, packed (s_a, s_b) with s_a least
/// significant and "+" first.
ProbabilityTable joint_spin_probability(const DirectionSet& dirs, std::size_t i,
                                        std::size_t j);

/// E(i, j) = sum over outcomes of s_a * s_b * P.
double correlation(const DirectionSet& dirs, std::size_t i, std::size_t j);

/// E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh(const DirectionSet& dirs, std::size_t a, std::size_t a2, std::size_t b,
            std::size_t b2);

/// The same four-correlator combination computed from marginals of the
/// formal |Z|^2 distribution over the subfamily (a, a' on particle a;
/// b, b' on particle b). A genuine joint distribution, so the result is
/// Bell-bounded by 2 in absolute value.
double formal_chsh(const DirectionSet& dirs, std::size_t a, std::size_t a2,
                   std::size_t b, std::size_t b2);

/// A pairwise sum constraint on numeric magnitude values, defining a
/// correlation set M_corr.
struct CorrelationConstraint {
    std::size_t magnitude_i = 0;
    std::size_t magnitude_j = 0;
    double required_sum = 0.0;
};

/// s_j^a + s_j^b = 0 for every direction j, the singlet's M_corr.
std::vector<CorrelationConstraint> singlet_constraints(const DirectionSet& dirs);

/// Whether a configuration satisfies every listed constraint.
bool satisfies_constraints(const Configuration& lambda,
                           const std::vector<CorrelationConstraint>& constraints);

}  // namespace qamp
