#pragma once

#include <cmath>

#include "qamp/errors.hpp"

namespace qamp {

/// The universal amplitude scalar. Complex amplitudes embed as
/// quaternions with y = z = 0; left-multiplication by such an element
/// reproduces complex multiplication on the (w, x) plane.
struct Quaternion {
    double w = 0.0;  // real part
    double x = 0.0;  // I component
    double y = 0.0;  // J component
    double z = 0.0;  // K component

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    /// Hamilton product, I^2 = J^2 = K^2 = IJK = -1.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double c) const {
        return {w * c, x * c, y * c, z * c};
    }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double c, const Quaternion& q) { return q * c; }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm_sq(const Quaternion& q) {
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double abs(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

/// Euclidean inner product of the four components. For unit pure
/// quaternions this equals the dot product of the underlying vectors.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr bool is_pure(const Quaternion& q) { return q.w == 0.0; }

/// Complex phase e^(i*phi) embedded as (cos phi, sin phi, 0, 0).
inline Quaternion from_phase(double phi) {
    return {std::cos(phi), std::sin(phi), 0.0, 0.0};
}

/// A unit 3-vector. Construction validates the unit norm; there is no
/// unchecked path, so downstream code can rely on it.
struct Direction {
    double nx;
    double ny;
    double nz;

    static constexpr double kUnitTol = 1e-12;

    Direction(double x, double y, double z) : nx(x), ny(y), nz(z) {
        const double n2 = x * x + y * y + z * z;
        if (std::fabs(n2 - 1.0) > kUnitTol)
            throw ValidationError("Direction: components are not a unit vector");
    }

    /// Rescale an arbitrary nonzero vector onto the unit sphere.
    static Direction normalized(double x, double y, double z) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n == 0.0) throw ValidationError("Direction: zero vector");
        return {x / n, y / n, z / n};
    }

    double dot(const Direction& o) const {
        return nx * o.nx + ny * o.ny + nz * o.nz;
    }
};

inline double dot(const Direction& a, const Direction& b) { return a.dot(b); }

/// N = nx*I + ny*J + nz*K, the pure unit quaternion carried by a
/// spatial direction.
inline Quaternion from_direction(const Direction& n) {
    return {0.0, n.nx, n.ny, n.nz};
}

}  // namespace qamp
