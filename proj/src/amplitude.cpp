#include "qamp/amplitude.hpp"

#include <utility>

#include "qamp/parallel.hpp"

namespace qamp {

namespace {

struct QuaternionKahan {
    KahanSum w, x, y, z;
    void add(const Quaternion& q) {
        w.add(q.w);
        x.add(q.x);
        y.add(q.y);
        z.add(q.z);
    }
    Quaternion value() const { return {w.value(), x.value(), y.value(), z.value()}; }
};

}  // namespace

AmplitudeDistribution::AmplitudeDistribution(MagnitudeFamily family,
                                             std::vector<Quaternion> table)
    : family_(std::move(family)), storage_(std::move(table)) {
    const auto& t = std::get<std::vector<Quaternion>>(storage_);
    if (t.size() != family_.cardinality())
        throw ValidationError("dense amplitude table length does not match the "
                              "family cardinality");
}

AmplitudeDistribution::AmplitudeDistribution(MagnitudeFamily family, Evaluator eval)
    : family_(std::move(family)), storage_(std::move(eval)) {
    if (!std::get<Evaluator>(storage_))
        throw ValidationError("lazy amplitude distribution needs an evaluator");
}

Quaternion AmplitudeDistribution::at(const Configuration& lambda) const {
    if (!lambda.family.same_family(family_))
        throw ValidationError("configuration does not belong to the "
                              "distribution's family");
    return at(lambda.packed);
}

const std::vector<Quaternion>& AmplitudeDistribution::table() const {
    if (const auto* t = std::get_if<std::vector<Quaternion>>(&storage_)) return *t;
    throw ValidationError("table(): distribution is lazy; use materialize()");
}

std::vector<Quaternion> AmplitudeDistribution::materialize() const {
    if (const auto* t = std::get_if<std::vector<Quaternion>>(&storage_)) return *t;
    const std::uint64_t n = family_.cardinality();
    check_enumeration_budget(n);
    std::vector<Quaternion> out(n);
    const auto& eval = std::get<Evaluator>(storage_);
    for (std::uint64_t p = 0; p < n; ++p) out[p] = eval(p);
    return out;
}

AmplitudeDistribution marginalize(const AmplitudeDistribution& Z, const Subfamily& sub) {
    if (!sub.parent().same_family(Z.family()))
        throw ValidationError("marginalize: subfamily does not belong to the "
                              "distribution's family");
    check_enumeration_budget(sub.parent().cardinality());
    const std::uint64_t entries = sub.space().cardinality();
    std::vector<Quaternion> out(entries);
    // One task per output entry; each fiber is summed by exactly one task
    // in canonical order, so the result is independent of the thread count.
    parallel_for(entries, [&](std::uint64_t s) {
        QuaternionKahan acc;
        FiberWalker walk(sub, s);
        do {
            acc.add(Z.at(walk.current()));
        } while (walk.next());
        out[s] = acc.value();
    });
    return {sub.space(), std::move(out)};
}

namespace {

ProbabilityTable normalized_norms(const MagnitudeFamily& family,
                                  const std::vector<Quaternion>& amplitudes) {
    std::vector<double> p(amplitudes.size());
    KahanSum total;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        p[i] = norm_sq(amplitudes[i]);
        total.add(p[i]);
    }
    if (total.value() <= 0.0)
        throw DegenerateStateError("amplitude distribution vanishes identically; "
                                   "it defines no ray");
    const double inv = 1.0 / total.value();
    for (double& v : p) v *= inv;
    return {family, std::move(p)};
}

}  // namespace

ProbabilityTable born_probabilities(const AmplitudeDistribution& Z, const Subfamily& sub) {
    const AmplitudeDistribution marginal = marginalize(Z, sub);
    return normalized_norms(marginal.family(), marginal.table());
}

ProbabilityTable formal_probabilities(const AmplitudeDistribution& Z) {
    return normalized_norms(Z.family(), Z.materialize());
}

ProbabilityTable marginal_probability(const ProbabilityTable& P, const Subfamily& sub) {
    if (!sub.parent().same_family(P.family))
        throw ValidationError("marginal_probability: subfamily does not belong "
                              "to the table's family");
    const std::uint64_t entries = sub.space().cardinality();
    std::vector<double> out(entries);
    for (std::uint64_t s = 0; s < entries; ++s) {
        KahanSum acc;
        FiberWalker walk(sub, s);
        do {
            acc.add(P.probabilities[walk.current()]);
        } while (walk.next());
        out[s] = acc.value();
    }
    return {sub.space(), std::move(out)};
}

AmplitudeDistribution product(const AmplitudeDistribution& Z_I,
                              const AmplitudeDistribution& Z_II) {
    for (const auto& m : Z_I.family().magnitudes())
        for (const auto& o : Z_II.family().magnitudes())
            if (m.name == o.name)
                throw ValidationError("product: families share magnitude '" + m.name + "'");
    std::vector<Magnitude> mags = Z_I.family().magnitudes();
    const auto& right = Z_II.family().magnitudes();
    mags.insert(mags.end(), right.begin(), right.end());
    MagnitudeFamily composite(std::move(mags));
    const std::uint64_t left_card = Z_I.family().cardinality();
    return {composite, [Z_I, Z_II, left_card](std::uint64_t packed) {
                return Z_I.at(packed % left_card) * Z_II.at(packed / left_card);
            }};
}

double pair_correlation(const ProbabilityTable& P) {
    if (P.family.size() != 2)
        throw ValidationError("pair_correlation: table must be over exactly 2 magnitudes");
    for (std::size_t i = 0; i < 2; ++i)
        if (P.family.magnitude(i).numeric.empty())
            throw ValidationError("pair_correlation: magnitude '" +
                                  P.family.magnitude(i).name + "' has no numeric values");
    KahanSum e;
    for (std::uint64_t p = 0; p < P.family.cardinality(); ++p) {
        const double v0 = P.family.magnitude(0).numeric[P.family.digit(p, 0)];
        const double v1 = P.family.magnitude(1).numeric[P.family.digit(p, 1)];
        e.add(v0 * v1 * P.probabilities[p]);
    }
    return e.value();
}

}  // namespace qamp
