#include "qamp/oracle.hpp"

#include <cmath>

namespace qamp::oracle {

namespace {
using complex = std::complex<double>;
}

std::array<complex, 2> spinor(const Direction& n, int s) {
    if (s != 1 && s != -1) throw ValidationError("spinor: s must be +1 or -1");
    const double rxy = std::hypot(n.nx, n.ny);
    // Half-angle components. Near either pole one of 1 +- nz cancels
    // catastrophically; recover that component from sin(theta) = rxy via
    // 2 sin(theta/2) cos(theta/2) = rxy instead.
    double cos_half, sin_half;
    if (n.nz >= 0.0) {
        cos_half = std::sqrt((1.0 + n.nz) / 2.0);
        sin_half = rxy == 0.0 ? 0.0 : rxy / (2.0 * cos_half);
    } else {
        sin_half = std::sqrt((1.0 - n.nz) / 2.0);
        cos_half = rxy == 0.0 ? 0.0 : rxy / (2.0 * sin_half);
    }
    // Azimuth phase; undefined on the z-axis, where sin or cos of the
    // half-angle vanishes anyway, so any unit value works. Pick 1.
    const complex phase = rxy > 1e-300 ? complex(n.nx / rxy, n.ny / rxy) : complex(1.0, 0.0);
    if (s == 1) return {complex(cos_half, 0.0), phase * sin_half};
    return {complex(sin_half, 0.0), -phase * cos_half};
}

double conditional(const Direction& n1, int s1, const Direction& n2, int s2) {
    const auto a = spinor(n1, s1);
    const auto b = spinor(n2, s2);
    const complex overlap = std::conj(b[0]) * a[0] + std::conj(b[1]) * a[1];
    return std::norm(overlap);
}

double conditional_closed_form(const Direction& n1, int s1, const Direction& n2, int s2) {
    return (1.0 + s1 * s2 * n1.dot(n2)) / 2.0;
}

double singlet_joint(const Direction& n1, const Direction& n2, int s1, int s2) {
    // |psi> = (|+z,-z> - |-z,+z>)/sqrt(2) as a C^4 vector, projected onto
    // the product spinor chi_{s1}(n1) (x) chi_{s2}(n2).
    const auto chi1 = spinor(n1, s1);
    const auto chi2 = spinor(n2, s2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const complex overlap =
        (std::conj(chi1[0] * chi2[1]) - std::conj(chi1[1] * chi2[0])) * inv_sqrt2;
    return std::norm(overlap);
}

double singlet_joint_closed_form(const Direction& n1, const Direction& n2, int s1,
                                 int s2) {
    return (1.0 - s1 * s2 * n1.dot(n2)) / 4.0;
}

double singlet_correlation(const Direction& n1, const Direction& n2) {
    double e = 0.0;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) e += s1 * s2 * singlet_joint(n1, n2, s1, s2);
    return e;
}

double chsh(const Direction& a, const Direction& a2, const Direction& b,
            const Direction& b2) {
    return singlet_correlation(a, b) - singlet_correlation(a, b2) +
           singlet_correlation(a2, b) + singlet_correlation(a2, b2);
}

}  // namespace qamp::oracle
