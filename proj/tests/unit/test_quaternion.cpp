#include <doctest.h>

#include <array>
#include <cmath>

#include "qamp/quaternion.hpp"
#include "test_util.hpp"

using namespace qamp;
using test::max_component_diff;
using test::random_direction;
using test::random_quaternion;

namespace {

const Quaternion I{0, 1, 0, 0};
const Quaternion J{0, 0, 1, 0};
const Quaternion K{0, 0, 0, 1};
const Quaternion One{1, 0, 0, 0};

// Independent 3-vector routines the Hamilton-product checks compare against.
std::array<double, 3> cross3(const Direction& a, const Direction& b) {
    return {a.ny * b.nz - a.nz * b.ny, a.nz * b.nx - a.nx * b.nz,
            a.nx * b.ny - a.ny * b.nx};
}

}  // namespace

TEST_CASE("from_direction axis and diagonal cases") {
    CHECK(from_direction(Direction(0, 0, 1)) == K);
    CHECK(from_direction(Direction(1, 0, 0)) == I);
    const double s = 1.0 / std::sqrt(2.0);
    const Quaternion d = from_direction(Direction(s, s, 0));
    CHECK(d.w == 0.0);
    CHECK(d.x == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(d.y == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(d.z == 0.0);
    CHECK(norm_sq(d) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_pure(d));
}

TEST_CASE("non-unit directions are rejected") {
    CHECK_THROWS_AS(Direction(1.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(Direction(0.0, 0.0, 0.9999), ValidationError);
    CHECK_THROWS_AS(Direction::normalized(0.0, 0.0, 0.0), ValidationError);
}

TEST_CASE("Hamilton relations") {
    CHECK(I * J == K);
    CHECK(J * K == I);
    CHECK(K * I == J);
    CHECK(I * I == -One);
    CHECK(J * J == -One);
    CHECK(K * K == -One);
    CHECK(I * J * K == -One);
}

TEST_CASE("products of unit pure quaternions decompose into dot and cross parts") {
    std::mt19937_64 gen(101);
    for (int iter = 0; iter < 100; ++iter) {
        const Direction n1 = random_direction(gen);
        const Direction n2 = random_direction(gen);
        const Quaternion N1 = from_direction(n1);
        const Quaternion N2 = from_direction(n2);
        const auto c = cross3(n1, n2);
        // conj(N1) = -N1 for pure quaternions, so conj(N1)*N2 carries +dot
        // in the real part and -cross in the vector part; the reversed
        // product N2*N1 carries -dot and -cross.
        const Quaternion p = conj(N1) * N2;
        CHECK(p.w == doctest::Approx(n1.dot(n2)).scale(1).epsilon(1e-14));
        CHECK(p.x == doctest::Approx(-c[0]).scale(1).epsilon(1e-14));
        CHECK(p.y == doctest::Approx(-c[1]).scale(1).epsilon(1e-14));
        CHECK(p.z == doctest::Approx(-c[2]).scale(1).epsilon(1e-14));
        const Quaternion r = N2 * N1;
        CHECK(r.w == doctest::Approx(-n1.dot(n2)).scale(1).epsilon(1e-14));
        CHECK(r.x == doctest::Approx(-c[0]).scale(1).epsilon(1e-14));
        CHECK(r.y == doctest::Approx(-c[1]).scale(1).epsilon(1e-14));
        CHECK(r.z == doctest::Approx(-c[2]).scale(1).epsilon(1e-14));
        CHECK(max_component_diff(r, conj(N1 * N2)) <= 1e-15);
    }
}

TEST_CASE("norm of a sum of unit pure quaternions follows the dot product") {
    std::mt19937_64 gen(102);
    for (int iter = 0; iter < 100; ++iter) {
        const Direction n1 = random_direction(gen);
        const Direction n2 = random_direction(gen);
        const Quaternion N1 = from_direction(n1);
        const Quaternion N2 = from_direction(n2);
        CHECK(norm_sq(N1 + N2) ==
              doctest::Approx(2.0 * (1.0 + n1.dot(n2))).scale(1).epsilon(1e-13));
        // the probability kernel, all four sign pairs
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                CHECK(norm_sq(N1 * s1 - N2 * s2) ==
                      doctest::Approx(2.0 * (1.0 - s1 * s2 * n1.dot(n2)))
                          .scale(1)
                          .epsilon(1e-13));
    }
}

TEST_CASE("norm is multiplicative and conjugation is an antihomomorphism") {
    std::mt19937_64 gen(103);
    for (int iter = 0; iter < 200; ++iter) {
        const Quaternion a = random_quaternion(gen, 2.0);
        const Quaternion b = random_quaternion(gen, 2.0);
        const double lhs = norm_sq(a * b);
        const double rhs = norm_sq(a) * norm_sq(b);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        CHECK(max_component_diff(conj(a * b), conj(b) * conj(a)) <= 1e-13);
    }
}

TEST_CASE("conj(q)*q is the squared norm times the unit real quaternion") {
    std::mt19937_64 gen(104);
    for (int iter = 0; iter < 100; ++iter) {
        const Quaternion q = random_quaternion(gen, 3.0);
        const Quaternion p = conj(q) * q;
        const double n2 = norm_sq(q);
        CHECK(std::fabs(p.w - n2) <= 1e-14 * std::max(1.0, n2));
        CHECK(std::fabs(p.x) <= 1e-14 * std::max(1.0, n2));
        CHECK(std::fabs(p.y) <= 1e-14 * std::max(1.0, n2));
        CHECK(std::fabs(p.z) <= 1e-14 * std::max(1.0, n2));
    }
}

TEST_CASE("phase embedding multiplies like complex numbers") {
    std::mt19937_64 gen(105);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int iter = 0; iter < 100; ++iter) {
        const double a = angle(gen), b = angle(gen);
        CHECK(max_component_diff(from_phase(a) * from_phase(b), from_phase(a + b)) <=
              1e-12);
        // left phase multiplication acts on the (w, x) plane like complex
        // multiplication and rotates (y, z) without mixing into (w, x)
        const Quaternion q = random_quaternion(gen);
        const Quaternion r = from_phase(a) * q;
        const double re = std::cos(a) * q.w - std::sin(a) * q.x;
        const double im = std::cos(a) * q.x + std::sin(a) * q.w;
        CHECK(r.w == doctest::Approx(re).scale(1).epsilon(1e-14));
        CHECK(r.x == doctest::Approx(im).scale(1).epsilon(1e-14));
        CHECK(norm_sq(r) == doctest::Approx(norm_sq(q)).epsilon(1e-12));
    }
}
