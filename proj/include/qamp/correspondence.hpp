#pragma once

#include <vector>

#include "qamp/amplitude.hpp"
#include "qamp/config_space.hpp"

namespace qamp {

/// An orthodox amplitude table z(lambda_1) over one subfamily's space,
/// complex amplitudes embedded as quaternions (general quaternion
/// entries are accepted too).
struct CorrespondenceTarget {
    Subfamily subfamily;
    std::vector<Quaternion> amplitudes;

    CorrespondenceTarget(Subfamily sub, std::vector<Quaternion> amps);
};

/// Per-configuration phase angles theta(lambda_1) for each target,
/// fixing the basis-phase freedom in the strong correspondence
/// equations. Empty = all zero.
struct PhaseAssignment {
    std::vector<std::vector<double>> theta;
};

struct TargetResidual {
    double scale = 0.0;                  // best projective scale (1 for strong checks)
    std::vector<double> residuals;       // per configuration
    double max_residual = 0.0;
};

struct ResidualReport {
    std::vector<TargetResidual> targets;
    double max_residual = 0.0;
};

/// Projective (mild) correspondence check: for each target, compares the
/// marginal moduli |Z(lambda_1)| against c * |z(lambda_1)| at the
/// least-squares scale c. A vanishing marginal against a nonzero target
/// is reported as an infinite residual, never thrown.
ResidualReport check_projective(const AmplitudeDistribution& Z,
                                const std::vector<CorrespondenceTarget>& targets);

struct StrongSolution {
    AmplitudeDistribution distribution;
    ResidualReport report;      // strong-equation residuals of the solution
    bool underdetermined = false;
};

/// Solves the strong correspondence equations
///   sum_{fiber} Z(lambda) = e^{i theta(lambda_1)} z(lambda_1)
/// for the unknown Z in the least-squares sense (ridge-regularized
/// normal equations, regularization 1e-12). Works on the (w, x) complex
/// embedding when every target is complex-embedded, otherwise on all
/// four real components. Rank-deficient systems return the regularized
/// minimum-norm solution flagged as underdetermined; inconsistent
/// targets yield a positive residual, never an exception. Existence of
/// exact solutions is never claimed.
StrongSolution solve_strong(const MagnitudeFamily& family,
                            const std::vector<CorrespondenceTarget>& targets,
                            const PhaseAssignment& phases = {});

/// The quantified Born-vs-marginal gap: the maximum absolute difference
/// between the two-step Born table on sub_coarse and the probability
/// marginal of the Born table on sub_fine (sub_coarse must select a
/// subset of sub_fine's magnitudes).
double mismatch_report(const AmplitudeDistribution& Z, const Subfamily& sub_fine,
                       const Subfamily& sub_coarse);

}  // namespace qamp
