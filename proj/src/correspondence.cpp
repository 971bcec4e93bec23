#include "qamp/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qamp {

CorrespondenceTarget::CorrespondenceTarget(Subfamily sub, std::vector<Quaternion> amps)
    : subfamily(std::move(sub)), amplitudes(std::move(amps)) {
    if (amplitudes.size() != subfamily.space().cardinality())
        throw ValidationError("correspondence target length does not match the "
                              "subfamily's space");
    bool any = false;
    for (const auto& q : amplitudes) any = any || norm_sq(q) > 0.0;
    if (!any)
        throw ValidationError("correspondence target is identically zero");
}

ResidualReport check_projective(const AmplitudeDistribution& Z,
                                const std::vector<CorrespondenceTarget>& targets) {
    ResidualReport report;
    report.targets.reserve(targets.size());
    for (const auto& target : targets) {
        const AmplitudeDistribution marginal = marginalize(Z, target.subfamily);
        const std::size_t n = target.amplitudes.size();
        std::vector<double> m(n), zmod(n);
        double m_total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = abs(marginal.table()[i]);
            zmod[i] = abs(target.amplitudes[i]);
            m_total += m[i];
        }
        TargetResidual tr;
        if (m_total == 0.0) {
            // No ray on the left-hand side: projectively incomparable.
            tr.scale = 0.0;
            tr.residuals.assign(n, std::numeric_limits<double>::infinity());
            tr.max_residual = std::numeric_limits<double>::infinity();
        } else {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += m[i] * zmod[i];
                den += zmod[i] * zmod[i];
            }
            tr.scale = num / den;
            tr.residuals.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                tr.residuals[i] = std::fabs(m[i] - tr.scale * zmod[i]);
                tr.max_residual = std::max(tr.max_residual, tr.residuals[i]);
            }
        }
        report.max_residual = std::max(report.max_residual, tr.max_residual);
        report.targets.push_back(std::move(tr));
    }
    return report;
}

namespace {

// Cholesky solve of the SPD system M x = v (M overwritten). Returns
// false if a pivot collapses, which the ridge prevents in practice.
bool cholesky_solve(std::vector<double>& M, std::vector<double>& v, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = M[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= M[j * n + k] * M[j * n + k];
        if (!(d > 0.0)) return false;
        const double root = std::sqrt(d);
        M[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = M[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= M[i * n + k] * M[j * n + k];
            M[i * n + j] = s / root;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = v[i];
        for (std::size_t k = 0; k < i; ++k) s -= M[i * n + k] * v[k];
        v[i] = s / M[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = v[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= M[k * n + ii] * v[k];
        v[ii] = s / M[ii * n + ii];
    }
    return true;
}

// Rank of a symmetric PSD matrix by pivoted Gaussian elimination.
std::size_t psd_rank(std::vector<double> M, std::size_t n) {
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, M[i * n + i]);
    const double tol = std::max(1e-10 * max_diag, 1e-300);
    std::size_t rank = 0;
    std::vector<bool> used(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pivot = n;
        double best = tol;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && M[i * n + i] > best) {
                best = M[i * n + i];
                pivot = i;
            }
        if (pivot == n) break;
        used[pivot] = true;
        ++rank;
        const double inv = 1.0 / M[pivot * n + pivot];
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const double f = M[i * n + pivot] * inv;
            for (std::size_t k = 0; k < n; ++k) M[i * n + k] -= f * M[pivot * n + k];
        }
    }
    return rank;
}

}  // namespace

StrongSolution solve_strong(const MagnitudeFamily& family,
                            const std::vector<CorrespondenceTarget>& targets,
                            const PhaseAssignment& phases) {
    if (targets.empty()) throw ValidationError("solve_strong: no targets");
    if (!phases.theta.empty() && phases.theta.size() != targets.size())
        throw ValidationError("solve_strong: phase assignment must cover every target");
    std::size_t rows_cfg = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!targets[t].subfamily.parent().same_family(family))
            throw ValidationError("solve_strong: target subfamily does not belong "
                                  "to the family being solved for");
        if (!phases.theta.empty() &&
            phases.theta[t].size() != targets[t].amplitudes.size())
            throw ValidationError("solve_strong: phase count does not match target");
        rows_cfg += targets[t].amplitudes.size();
    }
    const std::uint64_t n_cfg = family.cardinality();
    check_enumeration_budget(n_cfg);

    bool complex_mode = true;
    for (const auto& t : targets)
        for (const auto& q : t.amplitudes)
            complex_mode = complex_mode && q.y == 0.0 && q.z == 0.0;
    const std::size_t comps = complex_mode ? 2 : 4;
    const std::size_t n_unknowns = static_cast<std::size_t>(n_cfg) * comps;

    // The coefficient pattern of each fiber-sum equation is identical for
    // every component, so the normal equations are assembled from the
    // sparse rows directly: one pass per target configuration.
    std::vector<double> M(n_unknowns * n_unknowns, 0.0);
    std::vector<double> rhs(n_unknowns, 0.0);
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& target = targets[t];
        for (std::uint64_t s = 0; s < target.amplitudes.size(); ++s) {
            Quaternion b = target.amplitudes[s];
            if (!phases.theta.empty()) b = from_phase(phases.theta[t][s]) * b;
            const double bc[4] = {b.w, b.x, b.y, b.z};
            std::vector<std::uint64_t> members;
            members.reserve(target.subfamily.fiber_size());
            FiberWalker walk(target.subfamily, s);
            do {
                members.push_back(walk.current());
            } while (walk.next());
            for (std::uint64_t gi : members)
                for (std::uint64_t gk : members)
                    for (std::size_t c = 0; c < comps; ++c)
                        M[(gi * comps + c) * n_unknowns + gk * comps + c] += 1.0;
            for (std::uint64_t gi : members)
                for (std::size_t c = 0; c < comps; ++c)
                    rhs[gi * comps + c] += bc[c];
        }
    }

    StrongSolution result{AmplitudeDistribution(family, std::vector<Quaternion>(n_cfg)),
                          {}, false};
    result.underdetermined = psd_rank(M, n_unknowns) < n_unknowns;

    constexpr double kRidge = 1e-12;
    for (std::size_t i = 0; i < n_unknowns; ++i) M[i * n_unknowns + i] += kRidge;
    if (!cholesky_solve(M, rhs, n_unknowns))
        throw std::runtime_error("solve_strong: normal equations factorization failed");

    std::vector<Quaternion> solution(n_cfg);
    for (std::uint64_t g = 0; g < n_cfg; ++g) {
        solution[g].w = rhs[g * comps + 0];
        solution[g].x = rhs[g * comps + 1];
        if (!complex_mode) {
            solution[g].y = rhs[g * comps + 2];
            solution[g].z = rhs[g * comps + 3];
        }
    }
    result.distribution = AmplitudeDistribution(family, std::move(solution));

    // Residuals of the strong equations at the solution.
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& target = targets[t];
        const AmplitudeDistribution marginal =
            marginalize(result.distribution, target.subfamily);
        TargetResidual tr;
        tr.scale = 1.0;
        tr.residuals.resize(target.amplitudes.size());
        for (std::uint64_t s = 0; s < target.amplitudes.size(); ++s) {
            Quaternion want = target.amplitudes[s];
            if (!phases.theta.empty()) want = from_phase(phases.theta[t][s]) * want;
            tr.residuals[s] = abs(marginal.table()[s] - want);
            tr.max_residual = std::max(tr.max_residual, tr.residuals[s]);
        }
        result.report.max_residual =
            std::max(result.report.max_residual, tr.max_residual);
        result.report.targets.push_back(std::move(tr));
    }
    return result;
}

double mismatch_report(const AmplitudeDistribution& Z, const Subfamily& sub_fine,
                       const Subfamily& sub_coarse) {
    if (!sub_fine.parent().same_family(Z.family()) ||
        !sub_coarse.parent().same_family(Z.family()))
        throw ValidationError("mismatch_report: subfamilies must belong to the "
                              "distribution's family");
    // Positions of the coarse magnitudes inside the fine selection.
    std::vector<std::size_t> positions;
    positions.reserve(sub_coarse.selected().size());
    for (std::size_t idx : sub_coarse.selected()) {
        const auto& fine_sel = sub_fine.selected();
        const auto it = std::find(fine_sel.begin(), fine_sel.end(), idx);
        if (it == fine_sel.end())
            throw ValidationError("mismatch_report: sub_coarse is not contained "
                                  "in sub_fine");
        positions.push_back(static_cast<std::size_t>(it - fine_sel.begin()));
    }
    const ProbabilityTable born_coarse = born_probabilities(Z, sub_coarse);
    const ProbabilityTable born_fine = born_probabilities(Z, sub_fine);
    const ProbabilityTable marginal =
        marginal_probability(born_fine, Subfamily(born_fine.family, positions));
    double gap = 0.0;
    for (std::size_t i = 0; i < born_coarse.probabilities.size(); ++i)
        gap = std::max(gap, std::fabs(born_coarse.probabilities[i] -
                                      marginal.probabilities[i]));
    return gap;
}

}  // namespace qamp
