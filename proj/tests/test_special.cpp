#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "gruss/funcspace.hpp"
#include "gruss/operators.hpp"
#include "gruss/special.hpp"

namespace {

using namespace gruss;

double log_binom(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double phi_oracle(int n, double x) {
    if (x == 0.0 || x == 1.0) return 1.0;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double lw = log_binom(n, k) + k * std::log(x) + (n - k) * std::log1p(-x);
        s += std::exp(2.0 * lw);
    }
    return s;
}

double legendre_explicit(int n, double y) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
        s += std::exp(2.0 * log_binom(n, k)) * std::pow(y + 1.0, k) * std::pow(y - 1.0, n - k);
    }
    return std::ldexp(s, -n);
}

// (1/pi) int_{-1}^{1} e^{-z(1+t)} / sqrt(1-t^2) dt by Gauss-Chebyshev.
double bessel_chebyshev_quadrature(double z, int N = 4000) {
    double s = 0.0;
    for (int j = 1; j <= N; ++j) s += std::exp(-z * (1.0 + std::cos((2.0 * j - 1.0) * M_PI / (2.0 * N))));
    return s / N;
}

double theta_series(int n, double x) {
    if (x == 0.0) return 1.0;
    const double q = x / (1.0 + x);
    double s = 0.0;
    for (int k = 0; k < 200000; ++k) {
        const double lw = log_binom(n + k - 1.0, k) + k * std::log(q) - n * std::log1p(x);
        const double t = std::exp(2.0 * lw);
        s += t;
        if (k > n * x + 50 && t < 1e-18 * s) break;
    }
    return s;
}

TEST(Phi, Examples) {
    EXPECT_DOUBLE_EQ(phi_bernstein(1, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(phi_bernstein(2, 0.5), 0.375);
    for (int n : {1, 5, 64}) {
        EXPECT_EQ(phi_bernstein(n, 0.0), 1.0);
        EXPECT_EQ(phi_bernstein(n, 1.0), 1.0);
    }
}

TEST(Phi, MatchesLgammaOracle) {
    for (int n : {1, 2, 7, 33, 64}) {
        for (int i = 0; i <= 40; ++i) {
            const double x = i / 40.0;
            EXPECT_NEAR(phi_bernstein(n, x), phi_oracle(n, x), 1e-13) << n << " " << x;
        }
    }
}

TEST(Legendre, Examples) {
    EXPECT_EQ(legendre_P(0, 3.7), 1.0);
    EXPECT_EQ(legendre_P(1, 3.7), 3.7);
    EXPECT_DOUBLE_EQ(legendre_P(2, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(legendre_P(2, 2.0), 5.5);
    EXPECT_DOUBLE_EQ(legendre_explicit(2, 2.0), 5.5);
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(legendre_P(n, 1.0), 1.0, 1e-13);
}

TEST(Legendre, MatchesExplicitSum) {
    for (int n = 1; n <= 40; ++n) {
        for (double y : {1.0, 1.3, 2.0, 5.5, 10.0}) {
            const double p = legendre_P(n, y);
            EXPECT_NEAR(p, legendre_explicit(n, y), 1e-11 * std::abs(p)) << n << " " << y;
        }
    }
}

TEST(PhiViaLegendre, Examples) {
    EXPECT_NEAR(phi_via_legendre(3, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(phi_via_legendre(2, 0.25), phi_oracle(2, 0.25), 1e-12);
    EXPECT_NEAR(phi_via_legendre(5, 0.4), phi_oracle(5, 0.4), 1e-9 * phi_oracle(5, 0.4));
    EXPECT_THROW((void)phi_via_legendre(5, 0.5), DomainRestrictionError);
    EXPECT_THROW((void)phi_via_legendre(5, 0.4995), DomainRestrictionError);
}

TEST(PhiViaLegendre, AgreesOnHalfInterval) {
    for (int n = 1; n <= 64; ++n) {
        for (int i = 0; i <= 499; i += 3) {
            const double x = i / 1000.0;
            const double d = phi_bernstein(n, x);
            ASSERT_NEAR(phi_via_legendre(n, x), d, 1e-9 * d) << n << " " << x;
        }
    }
}

TEST(CentralBinom, Examples) {
    EXPECT_DOUBLE_EQ(central_binom_scaled(1), 0.5);
    EXPECT_DOUBLE_EQ(central_binom_scaled(2), 0.375);
    const double c10 = central_binom_scaled(10);
    EXPECT_GT(c10, 1.0 / std::sqrt(M_PI * 13.0));
    EXPECT_LT(c10, 1.0 / std::sqrt(M_PI * 9.0));
    EXPECT_DOUBLE_EQ(c10, 184756.0 / 1048576.0);
    EXPECT_DOUBLE_EQ(central_binom_scaled(5), 252.0 / 1024.0);
}

TEST(CentralBinom, MatchesLgammaAndDecreases) {
    for (int n = 1; n <= 200; ++n) {
        const double want = std::exp(log_binom(2.0 * n, n) - n * std::log(4.0));
        EXPECT_NEAR(central_binom_scaled(n), want, 1e-11 * want);  // lgamma limits the oracle
        if (n > 1) EXPECT_LT(central_binom_scaled(n), central_binom_scaled(n - 1));
    }
}

TEST(ScaledBessel, Examples) {
    EXPECT_EQ(scaled_bessel_i0(0.0), 1.0);
    EXPECT_NEAR(scaled_bessel_i0(50.0), bessel_chebyshev_quadrature(50.0), 1e-8);
    EXPECT_THROW((void)scaled_bessel_i0(-1.0), std::invalid_argument);
}

TEST(ScaledBessel, MatchesStdCylBesselAndQuadrature) {
    for (double z : {0.01, 0.5, 1.0, 5.0, 12.0, 29.9, 30.1, 45.0, 100.0, 400.0}) {
        const double ref = std::exp(-z) * std::cyl_bessel_i(0.0, z);
        EXPECT_NEAR(scaled_bessel_i0(z), ref, 1e-12 * std::max(1.0, ref)) << z;
        EXPECT_NEAR(scaled_bessel_i0(z), bessel_chebyshev_quadrature(z), 1e-10) << z;
        EXPECT_NEAR(scaled_bessel_i0_integral(z), ref, 1e-10) << z;
    }
}

TEST(ScaledBessel, DecreasesToZero) {
    double prev = 1.0;
    for (double z = 0.25; z <= 2000.0; z *= 1.5) {
        const double v = scaled_bessel_i0(z);
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(Sigma, Examples) {
    EXPECT_EQ(sigma_szasz(4, 0.0), 1.0);
    EXPECT_NEAR(sigma_szasz(1, 10.0), scaled_bessel_i0(20.0), 1e-10);
    EXPECT_LT(sigma_szasz(2, 50.0), 0.05);
}

TEST(Sigma, EqualsPoissonSumOfSquares) {
    for (int n : {1, 3, 16, 64}) {
        for (double x : {0.1, 1.0, 7.5, 50.0}) {
            const auto L = szasz_at(n, x, 1e-15);
            EXPECT_NEAR(sigma_szasz(n, x), L.sum_of_squares(), 1e-12) << n << " " << x;
            EXPECT_NEAR(sigma_szasz(n, x), scaled_bessel_i0(2.0 * n * x), 1e-10) << n << " " << x;
        }
    }
}

TEST(Theta, Examples) {
    EXPECT_NEAR(theta_baskakov(1, 0.5), 0.5, 1e-12);
    EXPECT_NEAR(theta_baskakov(2, 1.0), 5.0 / 27.0, 1e-12);
    for (int n : {1, 4, 64}) EXPECT_EQ(theta_baskakov(n, 0.0), 1.0);
}

TEST(Theta, ClosedFormsAndSeries) {
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.5 * i;
        EXPECT_NEAR(theta_baskakov(1, x), 1.0 / (1.0 + 2.0 * x), 1e-10) << x;
        EXPECT_NEAR(theta_baskakov(2, x), (2 * x * x + 2 * x + 1) / std::pow(2 * x + 1, 3), 1e-10) << x;
    }
    for (int n : {3, 8, 20}) {
        for (double x : {0.2, 2.0, 15.0}) EXPECT_NEAR(theta_baskakov(n, x), theta_series(n, x), 1e-10) << n << " " << x;
    }
}

TEST(Psi, Examples) {
    EXPECT_EQ(psi_bbh(5, 0.0), 1.0);
    EXPECT_NEAR(psi_bbh(2, 1.0), 0.375, 1e-14);
    EXPECT_NEAR(psi_bbh(3, 2.0), phi_oracle(3, 2.0 / 3.0), 1e-12);
}

TEST(Psi, SubstitutionAndInfimum) {
    for (int n : {1, 4, 32}) {
        double lo = 1.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = 0.05 * i;
            const double v = psi_bbh(n, t);
            EXPECT_NEAR(v, phi_bernstein(n, t / (1.0 + t)), 1e-10);
            lo = std::min(lo, v);
        }
        EXPECT_NEAR(lo, central_binom_scaled(n), 1e-12);
    }
}

TEST(Tau, Examples) {
    for (int n : {1, 4, 9}) {
        for (int k = 0; k <= n; ++k) EXPECT_EQ(tau_hat(n, static_cast<double>(k) / n), 1.0);
        for (int k = 1; k <= n; ++k) EXPECT_NEAR(tau_hat(n, (2.0 * k - 1) / (2.0 * n)), 0.5, 1e-12);
    }
    EXPECT_NEAR(tau_hat(4, 0.2), 0.68, 1e-15);
}

TEST(Tau, MinimumIsHalf) {
    for (int n : {1, 2, 5, 16}) {
        for (int i = 0; i <= 1000; ++i) ASSERT_GE(tau_hat(n, i / 1000.0), 0.5 - 1e-12);
    }
}

TEST(KingSumsq, Examples) {
    EXPECT_NEAR(king_sumsq(1, M_SQRT2 / 2.0), 0.5, 1e-12);
    EXPECT_EQ(king_sumsq(1, 0.0), 1.0);
    EXPECT_NEAR(king_sumsq(2, 0.6), phi_oracle(2, r_star(2, 0.6)), 1e-13);
    for (int i = 0; i <= 50; ++i) {
        const double x = i / 50.0;
        EXPECT_NEAR(king_sumsq(1, x), 2 * std::pow(x, 4) - 2 * x * x + 1, 1e-14);
        for (int n : {2, 8, 64}) EXPECT_GE(king_sumsq(n, x), 1.0 / (n + 1) - 1e-15);
    }
}

TEST(SecondMoment, Examples) {
    EXPECT_DOUBLE_EQ(second_moment(Family::bernstein, 4, 0.5), 1.0 / 16.0);
    for (int k = 0; k <= 7; ++k) EXPECT_EQ(second_moment(Family::sdelta, 7, k / 7.0), 0.0);
    for (double x : {0.0, 0.3, 1.0}) EXPECT_NEAR(second_moment(Family::king, 1, x), 2 * x * x * (1 - x), 1e-15);
    EXPECT_THROW((void)second_moment(Family::szasz, 2, 0.5), std::invalid_argument);
}

TEST(SecondMoment, EqualsChebyshevTOfIdentity) {
    const auto e1 = corpus_function("e1");
    for (int n : {1, 2, 5, 16, 64}) {
        for (int i = 0; i <= 64; ++i) {
            const double x = i / 64.0;
            EXPECT_NEAR(second_moment(Family::bernstein, n, x), chebyshev_T(bernstein_at(n, x), e1, e1), 1e-10);
            EXPECT_NEAR(second_moment(Family::sdelta, n, x), chebyshev_T(sdelta_at(n, x), e1, e1), 1e-10);
            // King does not fix e1, so its moment about x is not T(e1, e1).
            const RealFunction centred("centred", Interval{0.0, 1.0}, [x](double t) { return (t - x) * (t - x); });
            EXPECT_NEAR(second_moment(Family::king, n, x), apply(king_at(n, x), centred), 1e-10);
            EXPECT_GE(second_moment(Family::king, n, x), 0.0);
        }
    }
}

// Properties of phi_n over the 1001-point grid.
TEST(PhiProperty, BoundsSymmetryMidpoint) {
    for (int n = 1; n <= 64; ++n) {
        const double cb = central_binom_scaled(n);
        EXPECT_NEAR(phi_bernstein(n, 0.5), cb, 1e-12);
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            const double p = phi_bernstein(n, x);
            ASSERT_GE(p, 1.0 / (n + 1) - 1e-15);
            ASSERT_LE(p, 1.0 + 1e-15);
            ASSERT_GE(p, cb - 1e-12);
            ASSERT_NEAR(p, phi_bernstein(n, 1.0 - x), 1e-12);
        }
        const double h = 1e-3;
        const double d2 = (phi_bernstein(n, 0.5 + h) - 2 * cb + phi_bernstein(n, 0.5 - h)) / (h * h);
        const double want = 16.0 * std::exp(log_binom(2.0 * n - 2, n - 1) - n * std::log(4.0));
        EXPECT_NEAR(d2, want, 1e-4 * want) << n;
    }
}

TEST(LegendreProperty, BonnetAndRatioInequality) {
    for (int n = 1; n < 64; ++n) {
        for (int i = 0; i <= 200; ++i) {
            const double y = -10.0 + 0.1 * i;
            const double r = (n + 1.0) * legendre_P(n + 1, y) - (2.0 * n + 1) * y * legendre_P(n, y) + n * legendre_P(n - 1, y);
            const double s = (n + 1.0) * std::abs(legendre_P(n + 1, y)) + (2.0 * n + 1) * std::abs(y * legendre_P(n, y)) +
                             n * std::abs(legendre_P(n - 1, y));
            ASSERT_LE(std::abs(r), 1e-10 * std::max(1.0, s)) << n << " " << y;
        }
        for (int i = 1; i <= 90; ++i) {
            const double y = 1.0 + 0.1 * i;
            ASSERT_LE(legendre_P(n, y), (y + std::sqrt(y * y - 1.0)) * legendre_P(n - 1, y) * (1 + 1e-12));
        }
    }
}

TEST(CentralBinomProperty, InequalityChains) {
    for (int n = 2; n <= 64; ++n) {
        const double c = central_binom_scaled(n);
        EXPECT_LT(1.0 / (n + 1), 1.0 / (2 * std::sqrt(n)) - 1e-12);
        EXPECT_LT(1.0 / (2 * std::sqrt(n)), c - 1e-12);
        EXPECT_LT(c, 1.0 / std::sqrt(2.0 * n + 1) - 1e-12);
        EXPECT_LT(1.0 / std::sqrt(M_PI * (n + 3)), c - 1e-12);
        EXPECT_LT(c, 1.0 / std::sqrt(M_PI * (n - 1)) - 1e-12);
    }
}

TEST(ThetaProperty, KernelChainOnGrid) {
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.25 * i;
        double prev = theta_baskakov(2, x);
        for (int n = 3; n <= 64; ++n) {
            const double v = theta_baskakov(n, x);
            ASSERT_LE(v, prev + 1e-12) << n << " " << x;
            ASSERT_GE(v, -1e-12);
            prev = v;
        }
    }
}

TEST(DecayProperty, SigmaAndThetaDecrease) {
    for (int n : {1, 4, 32}) {
        double ps = 2.0, pt = 2.0;
        for (double x : {10.0, 20.0, 40.0, 80.0}) {
            EXPECT_LT(sigma_szasz(n, x), ps);
            EXPECT_LT(theta_baskakov(n, x), pt);
            ps = sigma_szasz(n, x);
            pt = theta_baskakov(n, x);
        }
    }
}

}  // namespace
