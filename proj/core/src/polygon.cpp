#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakyloop/geometry.hpp"

namespace leakyloop::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

Polygon::Polygon(std::vector<Vec2> vertices, double side_length)
    : vertices_(std::move(vertices)), side_length_(side_length) {
    if (vertices_.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    if (!(side_length_ > 0.0))
        throw std::invalid_argument("polygon side length must be positive");
    const int n = static_cast<int>(vertices_.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double edge = distance(vertices_[(i + 1) % n], vertices_[i]);
        worst = std::max(worst, std::abs(edge - side_length_) / side_length_);
    }
    equilateral_tolerance_ = worst;
}

Polygon build_regular_polygon(int n_vertices, double side_length) {
    if (n_vertices < 3)
        throw std::invalid_argument("regular polygon needs at least 3 vertices");
    if (!(side_length > 0.0))
        throw std::invalid_argument("side length must be positive");
    const double circumradius = side_length / (2.0 * std::sin(kPi / n_vertices));
    std::vector<Vec2> verts(n_vertices);
    for (int i = 0; i < n_vertices; ++i) {
        const double t = 2.0 * kPi * i / n_vertices;
        verts[i] = {circumradius * std::cos(t), circumradius * std::sin(t)};
    }
    return Polygon(std::move(verts), side_length);
}

Polygon rhomboid(double phi, double side_length) {
    if (!(phi > 0.0) || phi > kPi / 2.0 + 1e-15)
        throw std::invalid_argument("rhomboid half-angle must be in (0, pi/2]");
    if (!(side_length > 0.0))
        throw std::invalid_argument("side length must be positive");
    const double cx = side_length * std::cos(phi);
    const double cy = side_length * std::sin(phi);
    std::vector<Vec2> verts = {{cx, 0.0}, {0.0, cy}, {-cx, 0.0}, {0.0, -cy}};
    return Polygon(std::move(verts), side_length);
}

Polygon reproject_equilateral(const Polygon& polygon, double side_length,
                              int max_iterations) {
    const int n = polygon.size();
    std::vector<Vec2> v = polygon.vertices();
    for (int it = 0; it < max_iterations; ++it) {
        // Rescale every edge direction to the target side and re-accumulate;
        // the walk ends at v[0] + gap.
        std::vector<Vec2> walk(n + 1);
        walk[0] = v[0];
        for (int i = 0; i < n; ++i) {
            Vec2 e = v[(i + 1) % n] - v[i];
            const double len = e.norm();
            if (len == 0.0)
                throw std::invalid_argument("reproject_equilateral: degenerate edge");
            walk[i + 1] = walk[i] + (side_length / len) * e;
        }
        // Distribute the closing gap uniformly over the vertices.
        const Vec2 gap = walk[n] - walk[0];
        for (int i = 0; i < n; ++i)
            v[i] = walk[i] - (static_cast<double>(i) / n) * gap;

        double worst_edge = 0.0;
        for (int i = 0; i < n; ++i)
            worst_edge = std::max(
                worst_edge, std::abs(distance(v[(i + 1) % n], v[i]) - side_length));
        if (worst_edge <= 1e-13 * side_length) break;
    }
    return Polygon(std::move(v), side_length);
}

} // namespace leakyloop::geometry
