#pragma once

#include <vector>

#include "leakyloop/geometry.hpp"

namespace leakyloop::perturb {

/// One Fourier mode's share of the second-order chord-energy I_g.
struct ModeContribution {
    int n;
    double a;
    double b;
    double weight;       // (a^2 + b^2) / n^2
    double f_value;      // F_n(pi u / L)
    double contribution; // prefactor * weight * f_value
};

/// F_n(v) = ∫_0^v (v - y) cos(2y) sin(ny) dy in closed form; v restricted
/// to (0, pi/2], where positivity is established. The n = 2 branch is its
/// own formula (the generic one would divide by n^2 - 4).
double f_n(int n, double v);

/// Per-mode kernel of the defining I_g integral:
/// ∫_0^v (v - y) cos(2y) sin^2(ny) dy in closed form. This, not f_n, is
/// what Parseval produces from the squared curvature window, so the mode
/// expansion of I_g is built on it. Positive for n >= 2; the n = 1 kernel
/// goes negative near v = pi/2 (tangent-periodic but non-closing
/// deformations can push the chord moment above the circle's).
double i_g_mode_kernel(int n, double v);

/// p=2 chord moment straight from the curvature representation:
/// 2 ∫_0^u dx (u - x) ∫_0^L dz cos(∫_{z-x/2}^{z+x/2} gamma). Gauss panels in
/// x, periodic trapezoid in z; the window integral of gamma is closed-form.
double c2_from_curvature(const geometry::CurvatureSpec& spec, double u);

struct IgResult {
    double total;
    std::vector<ModeContribution> per_mode;
};

/// Mode expansion of the second-order energy:
/// I_g(u) = (L^5 / 2 pi^4) sum (a_n^2 + b_n^2) / n^2 * kernel_n(pi u / L),
/// with kernel_n = i_g_mode_kernel. Agrees with the defining double
/// integral to quadrature accuracy.
IgResult i_g(const geometry::CurvatureSpec& spec, double u);

/// The defining double integral of I_g, kept as an independent route for
/// cross-validation of the mode expansion.
double i_g_direct(const geometry::CurvatureSpec& spec, double u);

/// Scaling probe of the expansion c2 = circle term - I_g + O(g^3): the
/// residual at eps0 and eps0/2 must shrink by at least the cubic factor.
struct ExpansionAudit {
    double u;
    double eps0;
    double residual_full;  // residual at eps0
    double residual_half;  // residual at eps0 / 2
    double ratio;          // |residual_full| / |residual_half|
    bool cubic_order;      // ratio >= 6, or both residuals at roundoff
};

ExpansionAudit second_order_expansion_audit(const geometry::CurvatureSpec& spec,
                                            double u, double eps0 = 0.02);

} // namespace leakyloop::perturb
