#pragma once

#include <cstdint>
#include <functional>

namespace qamp {

/// Worker cap for internal reductions. Every parallel loop in this
/// library assigns each output index to exactly one task, so results are
/// bitwise identical for any thread count.
int max_threads();
void set_max_threads(int n);

/// Runs fn(i) for i in [0, n). Parallelized when the configured thread
/// cap and the iteration count make it worthwhile.
void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& fn);

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace qamp
