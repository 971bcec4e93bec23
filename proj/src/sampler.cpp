#include "qamp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qamp {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

FrequencyReport sample(const EnsembleSpec& spec, const Subfamily& sub,
                       unsigned workers, double zero_tol) {
    if (spec.sample_count < 1)
        throw ValidationError("sample: sample count must be at least 1");
    for (const auto& c : spec.constraints)
        if (c.magnitude_i >= spec.distribution.family().size() ||
            c.magnitude_j >= spec.distribution.family().size())
            throw ValidationError("sample: constraint references an unknown magnitude");
    workers = std::max(1u, workers);

    ProbabilityTable born = born_probabilities(spec.distribution, sub);
    const MagnitudeFamily& space = born.family;
    const std::size_t outcomes = born.probabilities.size();

    // Constraints fully contained in the context: violating outcomes must
    // be Born-null; clamp them so the draw can never produce one.
    std::vector<CorrelationConstraint> local;
    for (const auto& c : spec.constraints) {
        const auto& sel = sub.selected();
        const auto i = std::find(sel.begin(), sel.end(), c.magnitude_i);
        const auto j = std::find(sel.begin(), sel.end(), c.magnitude_j);
        if (i == sel.end() || j == sel.end()) continue;
        local.push_back({static_cast<std::size_t>(i - sel.begin()),
                         static_cast<std::size_t>(j - sel.begin()), c.required_sum});
    }
    if (!local.empty()) {
        double clamped_mass = 0.0;
        for (std::size_t o = 0; o < outcomes; ++o) {
            if (satisfies_constraints({space, o}, local)) continue;
            if (born.probabilities[o] > zero_tol)
                throw ModelInconsistencyError(
                    "outcome violating a correlation constraint has Born "
                    "probability " + std::to_string(born.probabilities[o]) +
                    "; the distribution does not implement the constraint "
                    "through destructive interference");
            clamped_mass += born.probabilities[o];
            born.probabilities[o] = 0.0;
        }
        if (clamped_mass > 0.0)
            for (double& p : born.probabilities) p /= (1.0 - clamped_mass);
    }

    // Inverse-CDF table. Zero-probability outcomes get zero-width
    // intervals and the tail is pinned to exactly 1.0 from the last
    // positive outcome onward, so a forbidden outcome can never be drawn.
    std::vector<double> cdf(outcomes);
    double running = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t o = 0; o < outcomes; ++o) {
        running += born.probabilities[o];
        cdf[o] = running;
        if (born.probabilities[o] > 0.0) last_positive = o;
    }
    for (std::size_t o = last_positive; o < outcomes; ++o) cdf[o] = 1.0;

    const std::uint64_t n = spec.sample_count;
    auto draw_block = [&](std::uint64_t begin, std::uint64_t end,
                          std::vector<std::uint64_t>& counts) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const double u = uniform01_at(spec.seed, i);
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            ++counts[static_cast<std::size_t>(it - cdf.begin())];
        }
    };

    std::vector<std::vector<std::uint64_t>> per_worker(
        workers, std::vector<std::uint64_t>(outcomes, 0));
    if (workers == 1) {
        draw_block(0, n, per_worker[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n * w / workers;
            const std::uint64_t end = n * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { draw_block(begin, end, per_worker[w]); });
        }
        for (auto& t : pool) t.join();
    }

    FrequencyReport report;
    for (std::size_t i = 0; i < space.size(); ++i)
        report.context.push_back(space.magnitude(i).name);
    report.counts.assign(outcomes, 0);
    for (const auto& counts : per_worker)
        for (std::size_t o = 0; o < outcomes; ++o) report.counts[o] += counts[o];
    report.frequencies.resize(outcomes);
    report.born = born.probabilities;
    for (std::size_t o = 0; o < outcomes; ++o)
        report.frequencies[o] =
            static_cast<double>(report.counts[o]) / static_cast<double>(n);

    report.within_bound = true;
    for (std::size_t o = 0; o < outcomes; ++o) {
        const double p = report.born[o];
        const double dev = std::fabs(report.frequencies[o] - p);
        const double se = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        report.stderr_bound = std::max(report.stderr_bound, se);
        // se == 0 means the outcome is forced: the frequency must be exact.
        report.within_bound = report.within_bound && dev <= se;
    }
    report.seed = spec.seed;
    report.sample_count = n;
    report.worker_count = workers;
    report.generator = "splitmix64";
    return report;
}

}  // namespace qamp
