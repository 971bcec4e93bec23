#pragma once

#include <array>
#include <complex>

#include "qamp/quaternion.hpp"

namespace qamp::oracle {

/// Independent textbook reference for two-level systems, built from
/// explicit complex spinors. Shares no code with the amplitude pipeline;
/// it only borrows the validated Direction type.

/// Spin eigenstate of n.sigma with eigenvalue s, from half-angle
/// formulas. The azimuth is taken as 0 when n is (anti)parallel to z,
/// which removes the parameterization's one numerical singularity.
std::array<std::complex<double>, 2> spinor(const Direction& n, int s);

/// |<s2(n2)|s1(n1)>|^2 via the explicit spinors.
double conditional(const Direction& n1, int s1, const Direction& n2, int s2);

/// Closed form (1 + s1 s2 n1.n2)/2, for cross-checking the spinor path.
double conditional_closed_form(const Direction& n1, int s1, const Direction& n2, int s2);

/// Singlet joint outcome probability from the explicit two-qubit state
/// and product-spinor projections.
double singlet_joint(const Direction& n1, const Direction& n2, int s1, int s2);

/// Closed form (1 - s1 s2 n1.n2)/4.
double singlet_joint_closed_form(const Direction& n1, const Direction& n2, int s1, int s2);

/// sum over outcomes of s1 s2 P(s1, s2) for the singlet.
double singlet_correlation(const Direction& n1, const Direction& n2);

/// E(a,b) - E(a,b') + E(a',b) + E(a',b') from singlet correlations.
double chsh(const Direction& a, const Direction& a2, const Direction& b,
            const Direction& b2);

}  // namespace qamp::oracle
