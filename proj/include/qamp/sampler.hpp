#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qamp/amplitude.hpp"
#include "qamp/spin.hpp"

namespace qamp {

/// Ensemble of systems sharing one amplitude distribution. The
/// corpuscular label is never drawn from a joint distribution over the
/// full space (the theory provides none); outcomes are drawn per
/// measurement context from that context's Born table, which is the only
/// operational content available.
struct EnsembleSpec {
    AmplitudeDistribution distribution;
    std::vector<CorrelationConstraint> constraints;  // defines M_corr
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 1;
};

/// Empirical outcome frequencies for one measurement context, with the
/// Born reference and a 4-sigma binomial error bound per outcome.
struct FrequencyReport {
    std::vector<std::string> context;  // magnitude names of the measured subfamily
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> born;
    double max_abs_deviation = 0.0;
    double stderr_bound = 0.0;  // max over outcomes of 4*sqrt(p(1-p)/n)
    bool within_bound = false;  // every outcome within its own 4-sigma bound
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 0;
    unsigned worker_count = 1;
    std::string generator;  // algorithm name, for replication elsewhere
};

/// Counter-based generator: the value at (seed, counter) is a pure
/// function, so sample i is the same no matter how work is partitioned.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0, 1) from the counter-based stream.
double uniform01_at(std::uint64_t seed, std::uint64_t counter);

/// Draws spec.sample_count outcomes from the Born table of `sub`.
/// Outcomes that violate a correlation constraint fully contained in the
/// context must carry Born probability ~0 (destructive interference);
/// they are clamped to exactly zero so they can never be drawn. A
/// violating outcome with Born probability above `zero_tol` raises
/// ModelInconsistencyError. Work is split across `workers` contiguous
/// blocks; the counter-based stream makes the result independent of the
/// partitioning.
FrequencyReport sample(const EnsembleSpec& spec, const Subfamily& sub,
                       unsigned workers = 1, double zero_tol = 1e-12);

}  // namespace qamp
