#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gruss/operators.hpp"

namespace gruss {

inline constexpr double kRelativeTolerance = 1e-9;

/// One right-hand side. `slack` is the absolute allowance on top of the
/// relative tolerance (tail mass, quadrature error).
struct BoundEntry {
    std::string_view name;
    double rhs = 0.0;
    double slack = 0.0;
};

/// One (operator, x, f, g) evaluation.
struct BoundResult {
    OperatorSpec op;
    double x = 0.0;
    std::string f, g;
    double T = 0.0;
    double lhs = 0.0;  // |T|
    std::vector<BoundEntry> bounds;

    [[nodiscard]] const BoundEntry* find(std::string_view name) const noexcept {
        for (const auto& b : bounds) {
            if (b.name == name) return &b;
        }
        return nullptr;
    }
    [[nodiscard]] double margin(const BoundEntry& b) const noexcept { return b.rhs - lhs; }
    [[nodiscard]] double tolerance(const BoundEntry& b, double rel = kRelativeTolerance) const noexcept;
    [[nodiscard]] bool holds(const BoundEntry& b, double rel = kRelativeTolerance) const noexcept {
        return margin(b) >= -tolerance(b, rel);
    }
    [[nodiscard]] bool all_hold(double rel = kRelativeTolerance) const noexcept;
};

inline double BoundResult::tolerance(const BoundEntry& b, double rel) const noexcept {
    const double a = lhs < 0 ? -lhs : lhs;
    const double r = b.rhs < 0 ? -b.rhs : b.rhs;
    double scale = 1.0;
    if (a > scale) scale = a;
    if (r > scale) scale = r;
    return rel * scale + b.slack;
}

inline bool BoundResult::all_hold(double rel) const noexcept {
    for (const auto& b : bounds) {
        if (!holds(b, rel)) return false;
    }
    return true;
}

}  // namespace gruss
