#pragma once

#include <stdexcept>

#include "gruss/operators.hpp"

namespace gruss {

/// Thrown when an argument is inside the library's domain but outside the
/// region where a particular representation is valid.
class DomainRestrictionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Sum of squared Bernstein basis values, sum_k b_{nk}(x)^2.
[[nodiscard]] double phi_bernstein(int n, double x);

/// Legendre polynomial by Bonnet's three-term recursion.
[[nodiscard]] double legendre_P(int n, double y);

inline constexpr double kLegendreExclusion = 1e-3;

/// phi_n(x) through the Legendre representation
///   (y - sqrt(y^2 - 1))^n P_n(y),  y = (1 - 2x + 2x^2) / (1 - 2x).
/// Points above 1/2 are reflected. Throws DomainRestrictionError when
/// |x - 1/2| < delta, where the substitution is singular.
[[nodiscard]] double phi_via_legendre(int n, double x, double delta = kLegendreExclusion);

/// 4^-n binom(2n, n) as prod (2i-1)/(2i).
[[nodiscard]] double central_binom_scaled(int n);

/// e^-z I_0(z). Power series for z <= 30, integral representation beyond.
[[nodiscard]] double scaled_bessel_i0(double z);
/// e^-z I_0(z) from (1/pi) int_0^pi exp(-2 z sin^2(phi/2)) dphi, the
/// integral (1/pi) int_{-1}^{1} e^{-z(1+t)} / sqrt(1-t^2) dt after t = -cos(phi).
/// Periodic trapezoid rule, refined until successive values agree to 1e-15.
[[nodiscard]] double scaled_bessel_i0_integral(double z);

/// e^{-2nx} sum_k (nx)^{2k} / (k!)^2, summed outward from the largest term.
[[nodiscard]] double sigma_szasz(int n, double x);
/// Sum of squared Baskakov weights, tail below 1e-14.
[[nodiscard]] double theta_baskakov(int n, double x);
/// (1+t)^{-2n} sum_k binom(n,k)^2 t^{2k}.
[[nodiscard]] double psi_bbh(int n, double t);
/// Sum of squared hat-function weights of S_Delta_n.
[[nodiscard]] double tau_hat(int n, double x);
/// Sum of squared King weights, phi_n(r*_n(x)).
[[nodiscard]] double king_sumsq(int n, double x);

/// H((e_1 - x)^2; x) in closed form for bernstein, sdelta and king.
[[nodiscard]] double second_moment(Family family, int n, double x);

}  // namespace gruss
