#pragma once

#include <cstddef>
#include <vector>

#include "gruss/bound_result.hpp"
#include "gruss/funcspace.hpp"
#include "gruss/operators.hpp"

namespace gruss {

/// Chebyshev nodes cos((2k-1)pi/(2n)), k = 1..n, stored ascending, with the
/// matching barycentric weights (-1)^k sin t_k.
struct ChebyshevGrid {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> bary;
};

[[nodiscard]] ChebyshevGrid chebyshev_grid(int n);

/// Signed functional x -> (l_{1n}(x), ..., l_{nn}(x)).
[[nodiscard]] PointFunctional lagrange_basis(int n, double x);
[[nodiscard]] double lebesgue_function(int n, double x);

inline constexpr std::size_t kDefaultLebesgueGrid = 4097;

/// max of the Lebesgue function: uniform grid plus a golden-section search
/// around the best grid point. Memoized per (n, grid_size).
[[nodiscard]] double lebesgue_constant(int n, std::size_t grid_size = kDefaultLebesgueGrid);

/// sum_{k<m} |l_k(x) l_m(x)| from (Lambda^2 - sum l^2) / 2.
[[nodiscard]] double pair_product_sum(int n, double x);

struct LagrangeNewBound {
    double T = 0, lhs = 0, rhs = 0;
    double osc_f = 0, osc_g = 0, pair_sum = 0;
};

[[nodiscard]] LagrangeNewBound lagrange_new_bound(int n, const RealFunction& f,
                                                  const RealFunction& g, double x);

struct LagrangeClassical {
    double lebesgue = 0;
    double omega_f = 0, omega_g = 0;  // omega(.; 2) at full diameter
    /// 1/4 |L_n| (1 + |L_n|) omega(f;2) omega(g;2)
    double norm_form = 0;
    /// 1/2 (1 + (3/pi) ln n + (2/pi^2) ln^2 n) omega(f;2) omega(g;2)
    double log_form = 0;
    /// Same with 2/pi in place of 2/pi^2.
    double log_form_displayed = 0;
};

[[nodiscard]] LagrangeClassical lagrange_classical_from_omega(int n, double omega_f,
                                                              double omega_g);
/// omega(.; 2) is taken over a uniform grid of [-1,1] joined with the nodes.
[[nodiscard]] LagrangeClassical lagrange_classical_bound(int n, const RealFunction& f,
                                                         const RealFunction& g,
                                                         std::size_t grid_points = 1001);

/// min over a grid of sum l^2(x) / (1 + cos^2(n t) pi^2/6), x = cos t.
[[nodiscard]] double hermann_ratio(int n, std::size_t grid_points = 1001);

struct RivlinRow {
    int n = 0;
    double lebesgue = 0;
    double excess = 0;  // lebesgue - (2/pi) ln n
    bool in_window = false;
};

inline constexpr double kRivlinLower = 0.9625;
inline constexpr double kRivlinUpper = 1.0;

[[nodiscard]] std::vector<RivlinRow> rivlin_window(int n_min, int n_max,
                                                   std::size_t grid_size = kDefaultLebesgueGrid,
                                                   double tolerance = 1e-6);

}  // namespace gruss
