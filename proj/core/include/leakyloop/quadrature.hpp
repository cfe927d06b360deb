#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace leakyloop::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order and
/// cached. Orders up to a few hundred converge with Newton iteration on the
/// Legendre recurrence.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// ∫_a^b f using a single Gauss-Legendre panel of the given order.
template <typename F>
double gauss_panel(F&& f, double a, double b, int order = 16) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// ∫_a^b f with `panels` equal Gauss-Legendre panels.
template <typename F>
double gauss_composite(F&& f, double a, double b, int panels, int order = 16) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k)
        sum += gauss_panel(f, a + k * h, a + (k + 1) * h, order);
    return sum;
}

/// Periodic trapezoid rule for f over one period [0, period); spectrally
/// accurate for smooth periodic integrands.
template <typename F>
double periodic_trapezoid(F&& f, double period, int n) {
    const double h = period / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(i * h);
    return h * sum;
}

} // namespace leakyloop::quadrature
