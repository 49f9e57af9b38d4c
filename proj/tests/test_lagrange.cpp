#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gruss/funcspace.hpp"
#include "gruss/lagrange.hpp"
#include "gruss/operators.hpp"

namespace {

using namespace gruss;

std::vector<double> cheb_nodes(int n) {
    std::vector<double> x;
    for (int k = n; k >= 1; --k) x.push_back(std::cos((2.0 * k - 1.0) * M_PI / (2.0 * n)));
    return x;
}

// Product form l_k(x) = prod_{j != k} (x - x_j) / (x_k - x_j).
std::vector<double> basis_oracle(int n, double x) {
    const auto nodes = cheb_nodes(n);
    std::vector<double> l(n, 1.0);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j != k) l[k] *= (x - nodes[j]) / (nodes[k] - nodes[j]);
        }
    }
    return l;
}

RealFunction sym(const char* name, RealFunction::Evaluator f) {
    return RealFunction(name, Interval{-1.0, 1.0}, std::move(f));
}

TEST(ChebyshevGrid, NodesSymmetricAndInside) {
    for (int n : {1, 2, 7, 64}) {
        const auto g = chebyshev_grid(n);
        ASSERT_EQ(static_cast<int>(g.nodes.size()), n);
        const auto want = cheb_nodes(n);
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(g.nodes[i], want[i], 1e-15);
            EXPECT_GT(g.nodes[i], -1.0);
            EXPECT_LT(g.nodes[i], 1.0);
            EXPECT_NEAR(g.nodes[i], -g.nodes[n - 1 - i], 1e-15);
            if (i > 0) EXPECT_GT(g.nodes[i], g.nodes[i - 1]);
        }
    }
}

TEST(LagrangeBasis, Examples) {
    const auto a = lagrange_basis(1, 0.3);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_DOUBLE_EQ(a.weights()[0], 1.0);

    const auto b = lagrange_basis(2, 0.0);
    EXPECT_NEAR(b.nodes()[0], -M_SQRT1_2, 1e-15);
    EXPECT_NEAR(b.nodes()[1], M_SQRT1_2, 1e-15);
    EXPECT_NEAR(b.weights()[0], 0.5, 1e-15);
    EXPECT_NEAR(b.weights()[1], 0.5, 1e-15);

    for (int n : {3, 8, 33}) {
        const auto g = chebyshev_grid(n);
        for (int k = 0; k < n; ++k) {
            const auto L = lagrange_basis(n, g.nodes[k]);
            for (int j = 0; j < n; ++j) EXPECT_EQ(L.weights()[j], j == k ? 1.0 : 0.0);
        }
    }
    EXPECT_FALSE(lagrange_basis(3, 0.1).positive());
}

TEST(LagrangeBasis, MatchesProductForm) {
    for (int n : {2, 5, 12, 24}) {
        for (int i = 0; i <= 40; ++i) {
            const double x = -1.0 + i / 20.0;
            const auto L = lagrange_basis(n, x);
            const auto want = basis_oracle(n, x);
            for (int k = 0; k < n; ++k) EXPECT_NEAR(L.weights()[k], want[k], 1e-12) << n << " " << x;
        }
    }
}

TEST(LebesgueFunction, Examples) {
    for (double x : {-1.0, -0.2, 0.9}) EXPECT_DOUBLE_EQ(lebesgue_function(1, x), 1.0);
    EXPECT_NEAR(lebesgue_function(2, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(lebesgue_function(2, 1.0), M_SQRT2, 1e-15);
}

TEST(LebesgueConstant, Examples) {
    EXPECT_NEAR(lebesgue_constant(1), 1.0, 1e-15);
    EXPECT_NEAR(lebesgue_constant(2), M_SQRT2, 1e-6);
    EXPECT_NEAR(lebesgue_constant(3), 5.0 / 3.0, 1e-6);
    EXPECT_GT(lebesgue_constant(2) - 2 / M_PI * std::log(2.0), 0.9625);
    EXPECT_LT(lebesgue_constant(3) - 2 / M_PI * std::log(3.0), 1.0);
    EXPECT_THROW((void)lebesgue_constant(4, 64), std::invalid_argument);
}

TEST(LebesgueConstant, DominatesDenseSampling) {
    for (int n : {4, 7, 16, 50}) {
        double best = 0.0;
        for (int i = 0; i <= 200000; ++i) {
            const double x = -1.0 + i / 100000.0;
            double s = 0.0;
            for (double l : basis_oracle(n, x)) s += std::abs(l);
            best = std::max(best, s);
        }
        EXPECT_GE(lebesgue_constant(n), best - 1e-9) << n;
        EXPECT_NEAR(lebesgue_constant(n), best, 1e-6) << n;
    }
}

TEST(RivlinWindow, HoldsForTwoToHundred) {
    for (const auto& row : rivlin_window(2, 100)) {
        EXPECT_TRUE(row.in_window) << row.n << " " << row.excess;
        EXPECT_NEAR(row.excess, row.lebesgue - 2 / M_PI * std::log(row.n), 1e-15);
    }
}

TEST(PairProductSum, Examples) {
    EXPECT_EQ(pair_product_sum(1, 0.4), 0.0);
    EXPECT_NEAR(pair_product_sum(2, 0.0), 0.25, 1e-15);
    for (int n : {3, 9}) {
        for (double node : chebyshev_grid(n).nodes) EXPECT_EQ(pair_product_sum(n, node), 0.0);
    }
}

TEST(PairProductSum, MatchesDirectDoubleSum) {
    for (int n : {2, 3, 8, 20}) {
        for (int i = 0; i <= 50; ++i) {
            const double x = -1.0 + i / 25.0;
            const auto l = basis_oracle(n, x);
            double direct = 0.0;
            for (int k = 0; k < n; ++k)
                for (int m = k + 1; m < n; ++m) direct += std::abs(l[k] * l[m]);
            EXPECT_NEAR(pair_product_sum(n, x), direct, 1e-10 * std::max(1.0, direct));
            EXPECT_GE(pair_product_sum(n, x), 0.0);
        }
    }
}

TEST(LagrangeNewBound, Examples) {
    const auto e0 = sym("e0", [](double) { return 1.0; });
    const auto e1 = sym("e1", [](double x) { return x; });
    const auto z = lagrange_new_bound(5, e0, e1, 0.2);
    EXPECT_NEAR(z.lhs, 0.0, 1e-15);
    EXPECT_GE(z.rhs, z.lhs - 1e-15);

    const auto eq = lagrange_new_bound(2, e1, e1, 0.0);
    EXPECT_NEAR(eq.lhs, 0.5, 1e-15);
    EXPECT_NEAR(eq.rhs, 0.5, 1e-15);
    EXPECT_NEAR(eq.osc_f, M_SQRT2, 1e-15);

    const auto absx = sym("abs", [](double x) { return std::abs(x); });
    const auto sinpi = sym("sinpi", [](double x) { return std::sin(M_PI * x); });
    const auto r = lagrange_new_bound(4, absx, sinpi, 0.3);
    EXPECT_LE(r.lhs, r.rhs + 1e-10);
}

TEST(LagrangeClassical, Examples) {
    const auto e0 = sym("e0", [](double) { return 1.0; });
    const auto e1 = sym("e1", [](double x) { return x; });
    EXPECT_EQ(lagrange_classical_bound(6, e0, e0).norm_form, 0.0);

    const auto c = lagrange_classical_bound(2, e1, e1);
    EXPECT_NEAR(c.omega_f, 2.0, 1e-15);
    EXPECT_NEAR(c.norm_form, 0.25 * M_SQRT2 * (1 + M_SQRT2) * 4.0, 1e-6);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) worst = std::max(worst, lagrange_new_bound(2, e1, e1, -1.0 + i / 100.0).lhs);
    EXPECT_GE(c.norm_form, worst);
}

TEST(LagrangeClassical, LogFormsAndOrdering) {
    for (int n = 2; n <= 64; ++n) {
        const auto c = lagrange_classical_from_omega(n, 1.0, 1.0);
        const double ln = std::log(n);
        EXPECT_NEAR(c.log_form, 0.5 * (1 + 3 / M_PI * ln + 2 / (M_PI * M_PI) * ln * ln), 1e-14);
        EXPECT_NEAR(c.log_form_displayed, 0.5 * (1 + 3 / M_PI * ln + 2 / M_PI * ln * ln), 1e-14);
        EXPECT_LE(c.norm_form, c.log_form + 1e-12) << n;
    }
}

// Properties of the interpolation functional.
TEST(LagrangeProperty, PartitionReproductionLebesgue) {
    for (int n = 1; n <= 64; n += (n < 8 ? 1 : 7)) {
        for (int i = 0; i <= 100; ++i) {
            const double x = -1.0 + i / 50.0;
            const auto L = lagrange_basis(n, x);
            ASSERT_NEAR(L.weight_sum(), 1.0, 1e-12);
            ASSERT_GE(lebesgue_function(n, x), 1.0 - 1e-15);
            for (int p = 0; p < std::min(n, 12); ++p) {
                double s = 0.0;
                for (std::size_t k = 0; k < L.size(); ++k) s += L.weights()[k] * std::pow(L.nodes()[k], p);
                ASSERT_NEAR(s, std::pow(x, p), 1e-9) << n << " " << p << " " << x;
            }
        }
        for (double node : chebyshev_grid(n).nodes) EXPECT_NEAR(lebesgue_function(n, node), 1.0, 1e-15);
    }
}

TEST(LagrangeProperty, NodeIdempotence) {
    const auto f = sym("g", [](double x) { return std::exp(x) * std::cos(3 * x); });
    for (int n : {2, 5, 17}) {
        for (double node : chebyshev_grid(n).nodes) EXPECT_EQ(apply(lagrange_basis(n, node), f), f(node));
    }
}

TEST(HermannRatio, Positive) {
    for (int n : {1, 2, 4, 16, 64}) EXPECT_GT(hermann_ratio(n), 0.0);
}

}  // namespace
