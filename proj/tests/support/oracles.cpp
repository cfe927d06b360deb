#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakyloop/quadrature.hpp"

namespace oracles {

using leakyloop::quadrature::gauss_composite;

double k0_integral(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("k0_integral: x must be positive");

    // Head: t in [0, t1] with x (cosh t - 1) <= 3; the integrand only sways
    // by e^-3 there and its log-derivative stays below ~3, so a couple of
    // Gauss panels per unit length are machine-exact.
    const double t1 = std::acosh(1.0 + 3.0 / x);
    const int head_panels = std::max(8, static_cast<int>(std::ceil(2.0 * t1)) + 4);
    const double head = gauss_composite(
        [x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, t1,
        head_panels, 16);

    // Tail via v = x (cosh t - 1): dt = dv / (x sinh t). Truncated where the
    // integrand sits 1e-31 below its peak value e^-x.
    const double tail = gauss_composite(
        [x](double v) {
            const double c = 1.0 + v / x;
            return std::exp(-x - v) / (x * std::sqrt(c * c - 1.0));
        },
        3.0, 72.0, 14, 16);
    return head + tail;
}

double k0_series(double x) {
    if (!(x > 0.0) || x > 4.0)
        throw std::invalid_argument("k0_series: meant for small arguments");
    constexpr double euler = 0.57721566490153286060651209008240243;
    const double q = 0.25 * x * x;

    double i0 = 1.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        i0 += term;
        if (term < 1e-20 * i0) break;
    }
    double sum = 0.0, harmonic = 0.0;
    term = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        const double add = term * harmonic;
        sum += add;
        if (add < 1e-20 * std::max(sum, 1.0)) break;
    }
    return -(std::log(0.5 * x) + euler) * i0 + sum;
}

namespace {

double ramp_oscillatory(int n, double v, bool squared) {
    const int panels = std::max(16, 2 * n);
    return gauss_composite(
        [&](double y) {
            const double s = std::sin(n * y);
            return (v - y) * std::cos(2.0 * y) * (squared ? s * s : s);
        },
        0.0, v, panels, 16);
}

} // namespace

double f_n_direct(int n, double v) { return ramp_oscillatory(n, v, false); }

double i_g_kernel_direct(int n, double v) { return ramp_oscillatory(n, v, true); }

std::vector<leakyloop::geometry::CurvatureSpec>
seeded_random_specs(int count, double length, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<leakyloop::geometry::CurvatureSpec> specs;
    specs.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<leakyloop::geometry::CurvatureMode> modes;
        for (int m = 0; m < 5; ++m) {
            const double a = coef(rng), b = coef(rng);
            modes.push_back({pool[m], a, b});
        }
        specs.emplace_back(length, std::move(modes));
    }
    return specs;
}

leakyloop::geometry::CurvatureSpec
seeded_perturbation(std::mt19937& rng, double length, double sup_norm) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<leakyloop::geometry::CurvatureMode> modes;
    for (int n : {2, 3, 4}) {
        const double a = gauss(rng), b = gauss(rng);
        modes.push_back({n, a, b});
    }
    leakyloop::geometry::CurvatureSpec raw(length, std::move(modes));
    return raw.scaled(sup_norm / raw.sup_norm_measured());
}

} // namespace oracles
