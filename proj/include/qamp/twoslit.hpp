#pragma once

#include <cstddef>
#include <vector>

#include "qamp/amplitude.hpp"
#include "qamp/quaternion.hpp"

namespace qamp {

enum class Slit { Left, Right };

/// Two-slit geometry in units of length. Slit transverse positions are
/// at -d/2 (left) and +d/2 (right); the screen is at distance Lz.
struct SlitGeometry {
    double slit_separation;   // d
    double wavelength;        // w
    double screen_distance;   // Lz

    SlitGeometry(double d, double w, double lz);

    double slit_position(Slit s) const {
        return s == Slit::Left ? -0.5 * slit_separation : 0.5 * slit_separation;
    }
    /// Distance from a slit to the screen point at transverse coordinate r.
    double path_length(Slit s, double r) const;
};

/// d = 5w, Lz = 1000w with w = 1: several visible fringes at desk scale.
SlitGeometry default_geometry();

/// Ordered transverse sample positions on the final screen.
struct Screen {
    std::vector<double> positions;

    explicit Screen(std::vector<double> positions);

    /// `count` points spanning [-half_span, +half_span].
    static Screen uniform(double half_span, std::size_t count);
};

/// 501 points spanning +-0.25 * Lz.
Screen default_screen(const SlitGeometry& geom);

/// Monochromatic point-source spherical-wave kernel e^{ik rho}/rho per
/// slit, complex-embedded; k = 2 pi / wavelength.
Quaternion slit_amplitude(Slit slit, double r, const SlitGeometry& geom);

/// Dense distribution over the {slit} x {screen position} family. The
/// slit magnitude comes first (least significant).
AmplitudeDistribution build_state(const SlitGeometry& geom, const Screen& screen);

/// Subfamily selecting only the screen-position magnitude.
Subfamily position_subfamily(const MagnitudeFamily& slit_screen_family);

/// Born table over the screen positions: the observable pattern.
ProbabilityTable diffraction_pattern(const AmplitudeDistribution& Z);

/// Left-multiplies every right-branch amplitude by e^{i phi}; the left
/// branch is untouched.
AmplitudeDistribution phase_plate(const AmplitudeDistribution& Z, double phi);

/// Pattern after averaging an unknown phase shift at the right slit over
/// a uniform full-period grid of m_phases points. The squared moduli are
/// averaged before the single final normalization, so the cross term
/// (one e^{i phi} factor) is annihilated exactly by any grid with
/// m_phases >= 2 and the result equals the normalized sum of the two
/// single-slit patterns.
ProbabilityTable decohered_pattern(const AmplitudeDistribution& Z, std::size_t m_phases);

/// Pattern from one branch alone (the other slit's amplitudes zeroed).
ProbabilityTable single_slit_pattern(const AmplitudeDistribution& Z, Slit which);

/// Interference contrast of `pattern` relative to the incoherent
/// baseline (normally the sum of the single-slit patterns):
/// (max - min) / (max + min) of the ratio pattern/baseline. Dividing out
/// the baseline removes the 1/rho^2 envelope, so a fringeless pattern
/// scores ~0 regardless of the envelope.
double fringe_visibility(const ProbabilityTable& pattern, const ProbabilityTable& baseline);

}  // namespace qamp
