#pragma once

// Independent numerical oracles for the test suites. Everything here is
// deliberately implemented through different routes than the library code
// it checks: direct quadrature of integral representations and defining
// integrals, plus seeded generators for reproducible sweeps.

#include <random>
#include <vector>

#include "leakyloop/geometry.hpp"

namespace oracles {

/// K0 through its integral representation ∫_0^∞ exp(-x cosh t) dt:
/// composite Gauss panels over the flat head, a cosh-substituted tail
/// truncated where the integrand falls ~1e-31 below its peak.
double k0_integral(double x);

/// K0 through the ascending series
/// -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k.
double k0_series(double x);

/// Direct quadrature of ∫_0^v (v - y) cos(2y) sin(ny) dy.
double f_n_direct(int n, double v);

/// Direct quadrature of ∫_0^v (v - y) cos(2y) sin^2(ny) dy.
double i_g_kernel_direct(int n, double v);

/// Reproducible five-mode specs: distinct mode indices from 1..8,
/// coefficients uniform in [-1, 1].
std::vector<leakyloop::geometry::CurvatureSpec>
seeded_random_specs(int count, double length, unsigned seed);

/// Reproducible near-circular perturbation on modes {2, 3, 4}, scaled so
/// the measured sup norm ||L g|| equals `sup_norm`.
leakyloop::geometry::CurvatureSpec
seeded_perturbation(std::mt19937& rng, double length, double sup_norm);

} // namespace oracles
