#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "gruss/bound_result.hpp"
#include "gruss/funcspace.hpp"
#include "gruss/lagrange.hpp"
#include "gruss/operators.hpp"

namespace gruss {

// Bound names as they appear in BoundResult and in reports.
namespace bound_names {
inline constexpr std::string_view gruss_quarter = "gruss_quarter";
inline constexpr std::string_view mercer = "mercer";
inline constexpr std::string_view new_positive = "new_positive";
inline constexpr std::string_view new_signed = "new_signed";
inline constexpr std::string_view coarse_positive = "coarse_positive";
inline constexpr std::string_view specialized = "specialized";
inline constexpr std::string_view new_pos_global = "new_pos_global";
inline constexpr std::string_view classical_ws = "classical_ws";
inline constexpr std::string_view classical_xfree = "classical_xfree";
inline constexpr std::string_view lagrange_norm = "lagrange_norm";
inline constexpr std::string_view lagrange_log = "lagrange_log";
inline constexpr std::string_view log_displayed = "log_displayed";
inline constexpr std::string_view measure = "measure";
}  // namespace bound_names

/// 1/4 (M - m)(P - p).
[[nodiscard]] double gruss_quarter(double m, double M, double p, double P);

/// 1/2 min{(M-m) L|g-G|, (P-p) L|f-F|}, F = Lf, G = Lg, ranges over the nodes.
[[nodiscard]] double mercer_bound(const PointFunctional& L, const RealFunction& f, const RealFunction& g);
[[nodiscard]] double mercer_bound_values(std::span<const double> w, std::span<const double> f,
                                         std::span<const double> g);

/// 1/2 (1 - sum w^2) osc(f) osc(g) over the nodes of a positive functional.
[[nodiscard]] double new_bound_positive(const PointFunctional& L, const RealFunction& f,
                                        const RealFunction& g);
/// osc(f) osc(g) sum_{k<l} |w_k w_l|.
[[nodiscard]] double new_bound_signed(const PointFunctional& L, const RealFunction& f,
                                      const RealFunction& g);

/// Coefficient of osc(f) osc(g) in the family's closed-form majorant.
/// For baskakov a point x gives 1/2 (1 - theta_n(x)); without one, 1/2.
[[nodiscard]] double specialized_rhs(Family family, int n, std::optional<double> x = std::nullopt);

/// 1/2 (1 - 1/K) for a positive functional on K nodes.
[[nodiscard]] double coarse_positive_coefficient(std::size_t node_count);

[[nodiscard]] bool has_classical_bound(Family family) noexcept;

struct ClassicalBound {
    double step = 0;  // 2 sqrt(second moment)
    double rhs = 0;
    std::optional<double> xfree_step;
    std::optional<double> xfree_rhs;
};

[[nodiscard]] ClassicalBound classical_ws_bound(Family family, int n, double x,
                                                const ModulusEnvelope& ef,
                                                const ModulusEnvelope& eg);
[[nodiscard]] ClassicalBound classical_ws_bound(Family family, int n, double x,
                                                const RealFunction& f, const RealFunction& g,
                                                std::size_t grid_points = 1001);

// ---------------------------------------------------------------------------
// Cell evaluation

/// What the bounds need to know about one function on one family domain.
struct FunctionProfile {
    std::string name;
    Range grid_range;
    std::optional<ModulusEnvelope> envelope;
    /// Kept with the envelope so omega can be resampled at an exact step.
    std::optional<RealFunction> source;
    Interval domain;
    std::size_t grid_points = 0;
    std::vector<double> grid_values;
};

/// Lower estimate of the least concave majorant of omega(f; t): the envelope
/// value, raised by a direct sample at t when the source is known.
[[nodiscard]] double omega_tilde(const FunctionProfile& p, double t);

[[nodiscard]] ClassicalBound classical_ws_bound(Family family, int n, double x,
                                                const FunctionProfile& pf,
                                                const FunctionProfile& pg);

[[nodiscard]] FunctionProfile make_profile(const RealFunction& f, Interval domain,
                                           std::size_t grid_points, bool with_envelope);

/// Resampled omega values keyed by profile and step; valid for one x.
class OmegaCache {
public:
    double get(const FunctionProfile& p, double t);
    void clear() noexcept { entries_.clear(); }

private:
    struct Entry {
        const FunctionProfile* profile;
        double t;
        double value;
    };
    std::vector<Entry> entries_;
};

/// Every applicable bound for a discrete functional whose node values are given.
[[nodiscard]] BoundResult evaluate_cell(const OperatorSpec& spec, double x, const PointFunctional& L,
                                        std::span<const double> fv, std::span<const double> gv,
                                        const FunctionProfile& pf, const FunctionProfile& pg,
                                        OmegaCache* cache = nullptr);

[[nodiscard]] BoundResult evaluate_measure_cell(double a, const MeasureMoments& coarse,
                                                const MeasureMoments& fine,
                                                const FunctionProfile& pf,
                                                const FunctionProfile& pg);

struct EvalOptions {
    double tail_eps = kDefaultTailEps;
    std::size_t grid_points = 1001;
    double x_max = 50.0;
    int quad_n = kDefaultQuadPanels;
};

/// One-shot evaluation. Parametric families read a from spec.param.
[[nodiscard]] BoundResult evaluate_bounds(const OperatorSpec& spec, double x, const RealFunction& f,
                                          const RealFunction& g, const EvalOptions& opt = {});

[[nodiscard]] std::string to_json(const BoundResult& r, int indent = -1);

}  // namespace gruss
