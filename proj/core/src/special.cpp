#include "gruss/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gruss {

namespace {

void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(what) + ": x must lie in [0,1]");
}

void require_degree(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
}

// log(m!) - [m log m - m + log(2 pi m)/2], asymptotic series, accurate for m >= 10.
double stirling_correction(double m) {
    const double r = 1.0 / m;
    const double r2 = r * r;
    return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)));
}

// log of e^{-2L} L^{2m} / (m!)^2 without forming the large terms.
double log_sigma_term(double lambda, double m) {
    if (m < 10.0) return 2.0 * m * std::log(lambda) - 2.0 * std::lgamma(m + 1.0) - 2.0 * lambda;
    return 2.0 * m * std::log1p((lambda - m) / m) - 2.0 * (lambda - m) -
           std::log(2.0 * std::numbers::pi * m) - 2.0 * stirling_correction(m);
}

}  // namespace

double phi_bernstein(int n, double x) {
    require_degree(n, "phi_bernstein");
    require_unit(x, "phi_bernstein");
    return bernstein_at(n, x).sum_of_squares();
}

double legendre_P(int n, double y) {
    if (n < 0) throw std::invalid_argument("legendre_P: n must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = y;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * y * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double phi_via_legendre(int n, double x, double delta) {
    require_degree(n, "phi_via_legendre");
    require_unit(x, "phi_via_legendre");
    if (std::abs(x - 0.5) < delta) {
        throw DomainRestrictionError("phi_via_legendre: x within the exclusion radius of 1/2");
    }
    if (x > 0.5) x = 1.0 - x;
    const double d = 1.0 - 2.0 * x;
    const double y = (1.0 - 2.0 * x + 2.0 * x * x) / d;
    const double y_minus_1 = 2.0 * x * x / d;
    const double root = std::sqrt(y_minus_1 * (y + 1.0));
    const double factor = 1.0 / (y + root);  // y - sqrt(y^2 - 1)

    // Bonnet recursion carried on Q_k = factor^k P_k(y) so nothing overflows.
    double prev = 1.0;
    double cur = factor * y;
    for (int k = 1; k < n; ++k) {
        const double next = factor * ((2.0 * k + 1.0) * y * cur - k * factor * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double central_binom_scaled(int n) {
    if (n < 0) throw std::invalid_argument("central_binom_scaled: n must be nonnegative");
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= (2.0 * i - 1.0) / (2.0 * i);
    return v;
}

double scaled_bessel_i0_integral(double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("scaled_bessel_i0: z must be >= 0");
    auto f = [z](double phi) {
        const double s = std::sin(0.5 * phi);
        return std::exp(-2.0 * z * s * s);
    };
    std::size_t n = 16;
    double sum = 0.5 * (f(0.0) + f(std::numbers::pi));
    for (std::size_t i = 1; i < n; ++i) sum += f(std::numbers::pi * static_cast<double>(i) / n);
    double estimate = sum / static_cast<double>(n);
    while (n < (std::size_t{1} << 24)) {
        // Add the midpoints of the current panels.
        double mid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mid += f(std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
        }
        sum += mid;
        n *= 2;
        const double next = sum / static_cast<double>(n);
        const bool done = std::abs(next - estimate) <= 1e-15 * next;
        estimate = next;
        if (done) break;
    }
    return estimate;
}

double scaled_bessel_i0(double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("scaled_bessel_i0: z must be >= 0");
    if (z > 30.0) return scaled_bessel_i0_integral(z);
    const double quarter_z2 = 0.25 * z * z;
    double term = std::exp(-z);
    double sum = term;
    for (int k = 0; k < 500; ++k) {
        term *= quarter_z2 / ((k + 1.0) * (k + 1.0));
        sum += term;
        if (k > z && term < 1e-17 * sum) break;
    }
    return sum;
}

double sigma_szasz(int n, double x) {
    require_degree(n, "sigma_szasz");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("sigma_szasz: x must be >= 0");
    const double lambda = n * x;
    if (lambda == 0.0) return 1.0;
    const double mode = std::floor(lambda);
    const double peak = std::exp(log_sigma_term(lambda, mode));
    const double l2 = lambda * lambda;
    double sum = peak;
    double term = peak;
    for (double k = mode; k > 0.0; k -= 1.0) {
        term *= (k * k) / l2;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    term = peak;
    for (double k = mode;; k += 1.0) {
        term *= l2 / ((k + 1.0) * (k + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double theta_baskakov(int n, double x) {
    require_degree(n, "theta_baskakov");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("theta_baskakov: x must be >= 0");
    return baskakov_at(n, x, 1e-14).sum_of_squares();
}

double psi_bbh(int n, double t) {
    require_degree(n, "psi_bbh");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("psi_bbh: t must be >= 0");
    if (t == 0.0) return 1.0;
    const double log_t = std::log(t);
    const double log_scale = n * std::log1p(t);
    double coeff = 0.0;  // log binom(n, k)
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) coeff += std::log(static_cast<double>(n - k + 1) / k);
        const double term = std::exp(coeff + k * log_t - log_scale);
        sum += term * term;
    }
    return sum;
}

double tau_hat(int n, double x) {
    require_degree(n, "tau_hat");
    require_unit(x, "tau_hat");
    return sdelta_at(n, x).sum_of_squares();
}

double king_sumsq(int n, double x) {
    require_degree(n, "king_sumsq");
    require_unit(x, "king_sumsq");
    return phi_bernstein(n, r_star(n, x));
}

double second_moment(Family family, int n, double x) {
    require_degree(n, "second_moment");
    require_unit(x, "second_moment");
    switch (family) {
        case Family::bernstein:
            return x * (1.0 - x) / n;
        case Family::sdelta: {
            const double nx = n * x;
            if (std::abs(nx - std::round(nx)) <= 1e-12 * std::max(1.0, nx)) return 0.0;
            const int k = std::clamp(static_cast<int>(std::ceil(nx)), 1, n);
            return std::max(0.0, (nx - (k - 1)) * (k - nx)) / (static_cast<double>(n) * n);
        }
        case Family::king:
            return std::max(0.0, 2.0 * x * (x - r_star(n, x)));
        default:
            break;
    }
    throw std::invalid_argument("second_moment: closed form available only for bernstein, sdelta, king");
}

}  // namespace gruss
