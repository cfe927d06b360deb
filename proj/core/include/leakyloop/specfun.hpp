#pragma once

namespace leakyloop::specfun {

/// Modified Bessel function of the second kind, order zero (Macdonald
/// function). Relative accuracy is at the 1e-14 level over [1e-8, 700];
/// beyond the exponential underflow point the result degrades to 0.
/// Throws std::domain_error for x <= 0: the logarithmic singularity at the
/// origin is always the caller's problem.
double bessel_k0(double x);

/// Modified Bessel function of the first kind, order zero. Companion of
/// bessel_k0: it carries the small-argument branch of K0 and the smooth
/// factor of the logarithmic kernel split. Overflows past x ~ 709.
double bessel_i0(double x);

/// exp(-x) * I0(x), stable for large x.
double bessel_i0_scaled(double x);

/// exp(x) * K0(x), stable for large x (x > 0).
double bessel_k0_scaled(double x);

/// Free-resolvent kernel at energy -kappa^2 in the plane:
/// (1/2pi) K0(kappa * d). Throws std::domain_error when d <= 0 or kappa <= 0.
double free_kernel(double kappa, double d);

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

} // namespace leakyloop::specfun
