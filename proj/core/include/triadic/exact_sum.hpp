#pragma once

#include <cstdint>
#include <vector>

namespace triadic {

/**
 * Error-free floating point accumulator.
 *
 * Keeps the running sum as a list of non-overlapping partials (Shewchuk's
 * algorithm), so value() is the correctly rounded result of the exact
 * mathematical sum. The result does not depend on the order in which terms
 * were added or accumulators were merged, which is what makes Monte Carlo
 * totals bit-identical across worker counts.
 */
class ExactSum {
public:
    ExactSum() = default;

    void add(double x);

    /// Adds the exact product x * n (two-product via fma, so nothing is rounded away).
    void add_product(double x, std::int64_t n);

    void merge(const ExactSum& other);

    double value() const;

    ExactSum& operator+=(double x) {
        add(x);
        return *this;
    }

private:
    std::vector<double> partials_;
};

} // namespace triadic
