#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gruss/funcspace.hpp"

namespace gruss {

enum class Family {
    bernstein,
    sdelta,
    szasz,
    baskakov,
    bbh,
    king,
    two_point,
    measure_example,
    lagrange_cheb,
};

/// All families in canonical order.
[[nodiscard]] std::span<const Family> all_families() noexcept;
[[nodiscard]] std::string_view family_name(Family f) noexcept;
[[nodiscard]] std::optional<Family> parse_family(std::string_view name) noexcept;

/// Natural evaluation domain; unbounded families use [0, x_max].
[[nodiscard]] Interval family_domain(Family f, double x_max);
[[nodiscard]] bool family_is_positive(Family f) noexcept;
/// Families whose functional is a truncated infinite series.
[[nodiscard]] bool family_is_truncated(Family f) noexcept;
/// Families whose sweep variable is the parameter a rather than a point x.
[[nodiscard]] bool family_is_parametric(Family f) noexcept;

/// CLI form `family:n[:param]`, e.g. `bernstein:8`, `two_point:1:0.25`.
struct OperatorSpec {
    Family family = Family::bernstein;
    int n = 1;
    double param = 0.0;

    [[nodiscard]] static OperatorSpec parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;
    void validate() const;
};

/// L = (point evaluation) o H, represented by nodes and weights.
class PointFunctional {
public:
    PointFunctional(NodeSet nodes, std::vector<double> weights, double tail_mass_bound = 0.0);

    [[nodiscard]] const NodeSet& nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    /// All weights >= -1e-15.
    [[nodiscard]] bool positive() const noexcept { return positive_; }
    [[nodiscard]] double tail_mass_bound() const noexcept { return tail_; }

    [[nodiscard]] double weight_sum() const noexcept;
    [[nodiscard]] double sum_of_squares() const noexcept;
    [[nodiscard]] double abs_sum() const noexcept;
    /// sum_{k<l} |w_k w_l| = ((sum |w|)^2 - sum w^2) / 2.
    [[nodiscard]] double abs_pair_sum() const noexcept;

    /// Copy with weight i replaced; the positivity flag is recomputed.
    [[nodiscard]] PointFunctional with_weight(std::size_t i, double w) const;

private:
    NodeSet nodes_;
    std::vector<double> weights_;
    double tail_ = 0.0;
    bool positive_ = true;
};

inline constexpr double kDefaultTailEps = 1e-12;

[[nodiscard]] PointFunctional bernstein_at(int n, double x);
[[nodiscard]] PointFunctional sdelta_at(int n, double x);
[[nodiscard]] PointFunctional szasz_at(int n, double x, double tail_eps = kDefaultTailEps);
[[nodiscard]] PointFunctional baskakov_at(int n, double x, double tail_eps = kDefaultTailEps);
[[nodiscard]] PointFunctional bbh_at(int n, double x);
/// King's r*_n(x): the root in [0,1] of r/n + (n-1)/n r^2 = x^2.
[[nodiscard]] double r_star(int n, double x);
[[nodiscard]] PointFunctional king_at(int n, double x);
[[nodiscard]] PointFunctional two_point(double a);

/// Functional for any family except measure_example. For parametric
/// families the point argument is ignored and spec.param is used.
[[nodiscard]] PointFunctional make_functional(const OperatorSpec& spec, double x,
                                              double tail_eps = kDefaultTailEps);

// ---------------------------------------------------------------------------
// Application

/// sum w_k f(x_k); throws std::invalid_argument if a node leaves f's domain.
[[nodiscard]] double apply(const PointFunctional& L, const RealFunction& f);
[[nodiscard]] double chebyshev_T(const PointFunctional& L, const RealFunction& f,
                                 const RealFunction& g);
/// sum_{k<l} w_k w_l (f_k - f_l)(g_k - g_l), evaluated directly (quadratic cost).
[[nodiscard]] double pairwise_identity(const PointFunctional& L, const RealFunction& f,
                                       const RealFunction& g);

// Value-level kernels shared by the sweep; spans are aligned with the weights.
[[nodiscard]] double apply_values(std::span<const double> w, std::span<const double> f);
[[nodiscard]] double chebyshev_T_values(std::span<const double> w, std::span<const double> f,
                                        std::span<const double> g);
[[nodiscard]] double pairwise_identity_values(std::span<const double> w,
                                              std::span<const double> f,
                                              std::span<const double> g);

// ---------------------------------------------------------------------------
// Measure example: L(f) = a * int_0^1 f + (1 - a) f(1/2)

inline constexpr int kDefaultQuadPanels = 2048;

/// Composite Simpson rule with `panels` double-width panels on [lo, hi].
[[nodiscard]] double simpson(const std::function<double(double)>& h, double lo, double hi,
                             int panels);

struct MeasureMoments {
    double int_f = 0, int_g = 0, int_fg = 0;
    double f_half = 0, g_half = 0;
};

[[nodiscard]] MeasureMoments measure_moments(const RealFunction& f, const RealFunction& g,
                                             int quad_n);
[[nodiscard]] double measure_T(const MeasureMoments& m, double a) noexcept;

struct MeasureExampleResult {
    double T = 0;
    double rhs = 0;
    /// Absolute quadrature allowance: 4 |T(quad_n) - T(2 quad_n)| + 1e-12.
    double quad_tolerance = 0;
    double osc_f = 0;
    double osc_g = 0;
};

/// T and the measure bound 1/2 a(2-a) osc(f) osc(g), oscillations over a
/// uniform grid of [0,1] (the support of mu x mu when a > 0).
[[nodiscard]] MeasureExampleResult measure_example_T(double a, const RealFunction& f,
                                                     const RealFunction& g,
                                                     int quad_n = kDefaultQuadPanels,
                                                     std::size_t grid_points = 1001);

}  // namespace gruss
