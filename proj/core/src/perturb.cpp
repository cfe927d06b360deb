#include "leakyloop/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakyloop/quadrature.hpp"

namespace leakyloop::perturb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_u(double u, double length) {
    if (!(u > 0.0) || u > 0.5 * length * (1.0 + 1e-12))
        throw std::invalid_argument("u must lie in (0, L/2]");
}

int max_mode(const geometry::CurvatureSpec& spec) {
    int m = 1;
    for (const auto& mode : spec.modes()) m = std::max(m, mode.n);
    return m;
}

// ∫_{z-x/2}^{z+x/2} g in closed form.
double window_integral(const geometry::CurvatureSpec& spec, double z, double x) {
    return spec.g_integral(z + 0.5 * x) - spec.g_integral(z - 0.5 * x);
}

// Outer Gauss panels in x, inner periodic trapezoid in z.
template <typename Inner>
double outer_integral(const geometry::CurvatureSpec& spec, double u, Inner&& inner) {
    const double L = spec.length();
    const int panels = std::max(16, static_cast<int>(std::ceil(64.0 * u / L)));
    const int nz = std::max(256, 16 * max_mode(spec));
    return quadrature::gauss_composite(
        [&](double x) {
            const double zsum = quadrature::periodic_trapezoid(
                [&](double z) { return inner(z, x); }, L, nz);
            return (u - x) * zsum;
        },
        0.0, u, panels, 16);
}

} // namespace

double f_n(int n, double v) {
    if (n < 1) throw std::invalid_argument("f_n: mode index must be >= 1");
    if (!(v > 0.0) || v > kPi / 2.0 + 1e-15)
        throw std::invalid_argument("f_n: v must lie in (0, pi/2]");
    if (n == 1) return (9.0 * std::sin(v) - std::sin(3.0 * v) - 6.0 * v) / 18.0;
    if (n == 2) return (4.0 * v - std::sin(4.0 * v)) / 32.0;
    const double nm = n - 2.0, np = n + 2.0;
    return n * v / (static_cast<double>(n) * n - 4.0) -
           std::sin(nm * v) / (2.0 * nm * nm) - std::sin(np * v) / (2.0 * np * np);
}

double i_g_mode_kernel(int n, double v) {
    if (n < 1) throw std::invalid_argument("i_g_mode_kernel: mode index must be >= 1");
    if (!(v > 0.0) || v > kPi / 2.0 + 1e-15)
        throw std::invalid_argument("i_g_mode_kernel: v must lie in (0, pi/2]");
    // sin^2(ny) = (1 - cos(2ny)) / 2 and ∫_0^v (v - y) cos(ky) dy
    // = (1 - cos(kv)) / k^2 (= v^2/2 at k = 0).
    auto ramp_cos = [](double k, double v_) {
        if (k == 0.0) return 0.5 * v_ * v_;
        return (1.0 - std::cos(k * v_)) / (k * k);
    };
    return 0.5 * ramp_cos(2.0, v) -
           0.25 * (ramp_cos(2.0 * (n + 1), v) + ramp_cos(2.0 * (n - 1), v));
}

double c2_from_curvature(const geometry::CurvatureSpec& spec, double u) {
    const double L = spec.length();
    validate_u(u, L);
    const double base = kTwoPi / L;
    return 2.0 * outer_integral(spec, u, [&](double z, double x) {
        return std::cos(base * x + window_integral(spec, z, x));
    });
}

IgResult i_g(const geometry::CurvatureSpec& spec, double u) {
    const double L = spec.length();
    validate_u(u, L);
    const double v = kPi * u / L;
    const double prefactor = std::pow(L, 5) / (2.0 * std::pow(kPi, 4));

    IgResult out;
    out.total = 0.0;
    out.per_mode.reserve(spec.modes().size());
    for (const auto& mode : spec.modes()) {  // modes are sorted by n
        ModeContribution c;
        c.n = mode.n;
        c.a = mode.a;
        c.b = mode.b;
        c.weight = (mode.a * mode.a + mode.b * mode.b) /
                   (static_cast<double>(mode.n) * mode.n);
        c.f_value = i_g_mode_kernel(mode.n, v);
        c.contribution = prefactor * c.weight * c.f_value;
        out.total += c.contribution;
        out.per_mode.push_back(c);
    }
    return out;
}

double i_g_direct(const geometry::CurvatureSpec& spec, double u) {
    const double L = spec.length();
    validate_u(u, L);
    const double base = kTwoPi / L;
    return outer_integral(spec, u, [&](double z, double x) {
        const double w = window_integral(spec, z, x);
        return std::cos(base * x) * w * w;
    });
}

ExpansionAudit second_order_expansion_audit(const geometry::CurvatureSpec& spec,
                                            double u, double eps0) {
    const double L = spec.length();
    validate_u(u, L);
    if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");

    const double circle_term =
        std::pow(L, 3) / (kPi * kPi) * std::pow(std::sin(kPi * u / L), 2);
    auto residual = [&](double eps) {
        const auto scaled = spec.scaled(eps);
        return c2_from_curvature(scaled, u) - (circle_term - i_g(scaled, u).total);
    };

    ExpansionAudit audit;
    audit.u = u;
    audit.eps0 = eps0;
    audit.residual_full = residual(eps0);
    audit.residual_half = residual(0.5 * eps0);

    const double floor = 1e-12 * std::pow(L, 3);
    if (std::abs(audit.residual_full) < floor &&
        std::abs(audit.residual_half) < floor) {
        // Both residuals at the quadrature floor (e.g. g = 0): nothing to rate.
        audit.ratio = 0.0;
        audit.cubic_order = true;
        return audit;
    }
    audit.ratio = std::abs(audit.residual_full) /
                  std::max(std::abs(audit.residual_half), 1e-300);
    audit.cubic_order = audit.ratio >= 6.0;
    return audit;
}

} // namespace leakyloop::perturb
