#pragma once

#include <cmath>
#include <span>

namespace gruss::detail {

/// Neumaier-compensated sum.
inline double compensated_sum(std::span<const double> xs) noexcept {
    double sum = 0.0;
    double c = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

}  // namespace gruss::detail
