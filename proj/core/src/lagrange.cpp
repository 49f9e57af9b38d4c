#include "gruss/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace gruss {

namespace {

void require_degree(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
}

void require_interval(double x, const char* what) {
    if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument(std::string(what) + ": x must lie in [-1,1]");
}

std::vector<double> basis_values(const ChebyshevGrid& grid, double x) {
    const auto n = grid.nodes.size();
    std::vector<double> l(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(x - grid.nodes[i]) < 1e-14) {
            l[i] = 1.0;
            return l;
        }
    }
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        l[i] = grid.bary[i] / (x - grid.nodes[i]);
        denom += l[i];
    }
    for (double& v : l) v /= denom;
    return l;
}

double abs_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += std::abs(a);
    return s;
}

double golden_max(const ChebyshevGrid& grid, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto lam = [&grid](double x) { return abs_sum(basis_values(grid, x)); };
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = lam(c), fd = lam(d);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = lam(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = lam(d);
        }
    }
    return std::max({fc, fd, lam(a), lam(b)});
}

}  // namespace

ChebyshevGrid chebyshev_grid(int n) {
    require_degree(n, "chebyshev_grid");
    ChebyshevGrid g;
    g.n = n;
    g.nodes.resize(n);
    g.bary.resize(n);
    for (int i = 0; i < n; ++i) {
        // sin form keeps the nodes exactly symmetric; i = 0 is the leftmost node.
        g.nodes[i] = std::sin(std::numbers::pi * (2.0 * i + 1.0 - n) / (2.0 * n));
        const double s = std::sin(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
        g.bary[i] = (i % 2 == 0) ? s : -s;
    }
    return g;
}

PointFunctional lagrange_basis(int n, double x) {
    require_degree(n, "lagrange_basis");
    require_interval(x, "lagrange_basis");
    auto grid = chebyshev_grid(n);
    auto l = basis_values(grid, x);
    return PointFunctional(NodeSet(std::move(grid.nodes)), std::move(l));
}

double lebesgue_function(int n, double x) {
    require_degree(n, "lebesgue_function");
    require_interval(x, "lebesgue_function");
    return abs_sum(basis_values(chebyshev_grid(n), x));
}

double lebesgue_constant(int n, std::size_t grid_size) {
    require_degree(n, "lebesgue_constant");
    if (grid_size < 129) throw std::invalid_argument("lebesgue_constant: grid_size must be >= 129");
    static std::mutex mutex;
    static std::map<std::pair<int, std::size_t>, double> cache;
    {
        const std::lock_guard lock(mutex);
        const auto it = cache.find({n, grid_size});
        if (it != cache.end()) return it->second;
    }
    const auto grid = chebyshev_grid(n);
    const auto xs = NodeSet::uniform(-1.0, 1.0, grid_size);
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = abs_sum(basis_values(grid, xs[i]));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = xs[best == 0 ? 0 : best - 1];
    const double hi = xs[std::min(best + 1, xs.size() - 1)];
    const double value = std::max(best_val, golden_max(grid, lo, hi));
    const std::lock_guard lock(mutex);
    cache.emplace(std::pair{n, grid_size}, value);
    return value;
}

double pair_product_sum(int n, double x) {
    require_degree(n, "pair_product_sum");
    require_interval(x, "pair_product_sum");
    const auto l = basis_values(chebyshev_grid(n), x);
    double a = 0.0, sq = 0.0;
    for (double v : l) {
        a += std::abs(v);
        sq += v * v;
    }
    return std::max(0.0, 0.5 * (a * a - sq));
}

LagrangeNewBound lagrange_new_bound(int n, const RealFunction& f, const RealFunction& g, double x) {
    const auto L = lagrange_basis(n, x);
    LagrangeNewBound r;
    r.T = chebyshev_T(L, f, g);
    r.lhs = std::abs(r.T);
    r.osc_f = oscillation(f, L.nodes());
    r.osc_g = oscillation(g, L.nodes());
    r.pair_sum = L.abs_pair_sum();
    r.rhs = r.osc_f * r.osc_g * r.pair_sum;
    return r;
}

LagrangeClassical lagrange_classical_from_omega(int n, double omega_f, double omega_g) {
    require_degree(n, "lagrange_classical_bound");
    if (!(omega_f >= 0.0) || !(omega_g >= 0.0)) {
        throw std::invalid_argument("lagrange_classical_bound: moduli must be nonnegative");
    }
    using std::numbers::pi;
    LagrangeClassical r;
    r.lebesgue = lebesgue_constant(n);
    r.omega_f = omega_f;
    r.omega_g = omega_g;
    const double prod = omega_f * omega_g;
    const double ln = std::log(static_cast<double>(n));
    r.norm_form = 0.25 * r.lebesgue * (1.0 + r.lebesgue) * prod;
    r.log_form = 0.5 * (1.0 + (3.0 / pi) * ln + (2.0 / (pi * pi)) * ln * ln) * prod;
    r.log_form_displayed = 0.5 * (1.0 + (3.0 / pi) * ln + (2.0 / pi) * ln * ln) * prod;
    return r;
}

LagrangeClassical lagrange_classical_bound(int n, const RealFunction& f, const RealFunction& g,
                                           std::size_t grid_points) {
    require_degree(n, "lagrange_classical_bound");
    const auto grid = NodeSet::uniform(-1.0, 1.0, grid_points);
    const auto nodes = chebyshev_grid(n).nodes;
    auto omega2 = [&](const RealFunction& h) {
        auto r = range_on_grid(h, grid);
        for (double v : h.sample(nodes)) {
            r.min = std::min(r.min, v);
            r.max = std::max(r.max, v);
        }
        return r.width();
    };
    return lagrange_classical_from_omega(n, omega2(f), omega2(g));
}

double hermann_ratio(int n, std::size_t grid_points) {
    require_degree(n, "hermann_ratio");
    const auto grid = chebyshev_grid(n);
    const auto xs = NodeSet::uniform(-1.0, 1.0, grid_points);
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    double best = std::numeric_limits<double>::infinity();
    for (double x : xs.values()) {
        const auto l = basis_values(grid, x);
        double sq = 0.0;
        for (double v : l) sq += v * v;
        const double c = std::cos(n * std::acos(x));
        best = std::min(best, sq / (1.0 + c * c * zeta2));
    }
    return best;
}

std::vector<RivlinRow> rivlin_window(int n_min, int n_max, std::size_t grid_size, double tolerance) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("rivlin_window: bad degree range");
    std::vector<RivlinRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        RivlinRow r;
        r.n = n;
        r.lebesgue = lebesgue_constant(n, grid_size);
        r.excess = r.lebesgue - (2.0 / std::numbers::pi) * std::log(static_cast<double>(n));
        r.in_window = r.excess > kRivlinLower - tolerance && r.excess < kRivlinUpper + tolerance;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace gruss
