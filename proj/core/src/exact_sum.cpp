#include "triadic/exact_sum.hpp"

#include <cmath>
#include <utility>

namespace triadic {

void ExactSum::add(double x) {
    std::size_t used = 0;
    for (double y : partials_) {
        if (std::fabs(x) < std::fabs(y)) {
            std::swap(x, y);
        }
        const double hi = x + y;
        const double lo = y - (hi - x);
        if (lo != 0.0) {
            partials_[used++] = lo;
        }
        x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
}

void ExactSum::add_product(double x, std::int64_t n) {
    const auto scale = static_cast<double>(n);
    const double product = x * scale;
    add(product);
    add(std::fma(x, scale, -product));
}

void ExactSum::merge(const ExactSum& other) {
    for (double p : other.partials_) {
        add(p);
    }
}

double ExactSum::value() const {
    if (partials_.empty()) {
        return 0.0;
    }
    std::size_t n = partials_.size();
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0) {
            break;
        }
    }
    // Round-half-even correction when the remaining partials push the tail past a tie.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        const double yr = x - hi;
        if (y == yr) {
            hi = x;
        }
    }
    return hi;
}

} // namespace triadic
