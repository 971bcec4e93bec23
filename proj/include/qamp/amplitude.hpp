#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "qamp/config_space.hpp"
#include "qamp/quaternion.hpp"

namespace qamp {

/// A quaternion-valued amplitude distribution Z over a family's
/// configuration space: the wave-like degrees of freedom, defined only
/// up to a nonzero real scale. Storage is either a dense table in
/// canonical packing order or a pure evaluation rule for spaces too
/// large to materialize.
class AmplitudeDistribution {
  public:
    using Evaluator = std::function<Quaternion(std::uint64_t)>;

    AmplitudeDistribution(MagnitudeFamily family, std::vector<Quaternion> table);
    AmplitudeDistribution(MagnitudeFamily family, Evaluator eval);

    const MagnitudeFamily& family() const { return family_; }
    bool is_dense() const { return std::holds_alternative<std::vector<Quaternion>>(storage_); }

    Quaternion at(std::uint64_t packed) const {
        if (const auto* t = std::get_if<std::vector<Quaternion>>(&storage_))
            return (*t)[packed];
        return std::get<Evaluator>(storage_)(packed);
    }
    Quaternion at(const Configuration& lambda) const;

    /// Dense table access; throws ValidationError on lazy storage.
    const std::vector<Quaternion>& table() const;

    /// Dense copy of the full table; budget-checked.
    std::vector<Quaternion> materialize() const;

  private:
    MagnitudeFamily family_;
    std::variant<std::vector<Quaternion>, Evaluator> storage_;
};

/// Normalized outcome probabilities over a family's configurations.
struct ProbabilityTable {
    MagnitudeFamily family;
    std::vector<double> probabilities;
};

/// Marginal amplitude: Z(lambda_1) = sum of Z over the fiber above each
/// lambda_1, reduced in canonical order with compensated summation.
/// Always returns a dense distribution over the subfamily's space.
AmplitudeDistribution marginalize(const AmplitudeDistribution& Z, const Subfamily& sub);

/// Two-step Born rule: marginalize first, then take squared moduli and
/// normalize. Throws DegenerateStateError when the marginal vanishes
/// identically.
ProbabilityTable born_probabilities(const AmplitudeDistribution& Z, const Subfamily& sub);

/// |Z(lambda)|^2 over the full family, normalized. A genuine joint
/// distribution, but not an observable one.
ProbabilityTable formal_probabilities(const AmplitudeDistribution& Z);

/// Marginal of a probability table: P'(lambda_1) = sum of P over the
/// fiber. This is NOT the two-step Born rule; the gap between the two is
/// the interference signature.
ProbabilityTable marginal_probability(const ProbabilityTable& P, const Subfamily& sub);

/// Composite state of two independent systems over the concatenated
/// family (left factor's magnitudes first, least significant):
/// Z(l_I, l_II) = Z_I(l_I) * Z_II(l_II), quaternion product in that
/// order. Returned lazily.
AmplitudeDistribution product(const AmplitudeDistribution& Z_I,
                              const AmplitudeDistribution& Z_II);

/// Expectation of the product of the two numeric magnitude values under
/// a table over a 2-magnitude family.
double pair_correlation(const ProbabilityTable& P);

}  // namespace qamp
