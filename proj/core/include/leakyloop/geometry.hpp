#pragma once

#include <string>
#include <utility>
#include <vector>

#include "leakyloop/vec2.hpp"

namespace leakyloop::geometry {

/// One Fourier mode of the curvature deviation g:
/// a * sin(2 pi n s / L) + b * cos(2 pi n s / L).
struct CurvatureMode {
    int n = 1;
    double a = 0.0;
    double b = 0.0;
};

/// Curvature description of a near-circular loop: gamma(s) = 2pi/L + g(s)
/// with g a zero-mean trigonometric polynomial. Mode indices are distinct
/// and >= 1; the missing zero mode enforces the zero mean.
class CurvatureSpec {
public:
    CurvatureSpec(double length, std::vector<CurvatureMode> modes);

    double length() const { return length_; }
    const std::vector<CurvatureMode>& modes() const { return modes_; }

    /// Coefficient-sum upper bound on ||L g||_inf: L * sum(|a_n| + |b_n|).
    double sup_norm_bound() const { return sup_norm_bound_; }

    /// max |L g| measured on a fine grid (lower bound on the sup norm,
    /// exact up to grid resolution for a trigonometric polynomial).
    double sup_norm_measured(int samples = 8192) const;

    double g(double s) const;

    /// ∫_0^s g, evaluated in closed form.
    double g_integral(double s) const;

    /// Bending angle beta(s) = 2 pi s / L + ∫_0^s g.
    double bending_angle(double s) const;

    /// Spec with every coefficient multiplied by factor.
    CurvatureSpec scaled(double factor) const;

    /// Spec with the n=1 pair replaced (inserted if absent).
    CurvatureSpec with_first_mode(double a1, double b1) const;

private:
    double length_;
    std::vector<CurvatureMode> modes_;
    double sup_norm_bound_;
};

/// Closed (or deliberately open, see build_paperclip) planar curve sampled
/// uniformly in arc length: points[i] = Gamma(i L / N). Immutable after
/// construction; all downstream quadratures work on the sample grid.
class ArcLengthCurve {
public:
    ArcLengthCurve(double length, std::vector<Vec2> points, double closure_defect,
                   double tangent_defect, std::string source,
                   std::vector<double> corners = {});

    double length() const { return length_; }
    int grid_size() const { return static_cast<int>(points_.size()); }
    const std::vector<Vec2>& points() const { return points_; }
    double closure_defect() const { return closure_defect_; }
    double tangent_defect() const { return tangent_defect_; }
    const std::string& source() const { return source_; }

    /// Arc-length positions of tangent discontinuities (lens corners).
    const std::vector<double>& corners() const { return corners_; }
    bool has_corners() const { return !corners_.empty(); }

    /// Detected by a sample-resolution segment sweep; a warning flag only.
    bool self_intersecting() const { return self_intersecting_; }

    double grid_step() const { return length_ / grid_size(); }
    Vec2 point(int i) const { return points_[wrap(i)]; }

    /// |Gamma(s_i + k h) - Gamma(s_i)| on the sample grid, indices mod N.
    double chord(int i, int k) const {
        return distance(points_[wrap(i + k)], points_[wrap(i)]);
    }

    /// Total length of the sample polyline (underestimates length() by
    /// O(N^-2) for smooth curves).
    double polyline_length() const;

    bool is_closed(double tol_factor = 1e-10) const {
        return closure_defect_ <= tol_factor * length_;
    }

private:
    int wrap(int i) const {
        const int n = grid_size();
        i %= n;
        return i < 0 ? i + n : i;
    }

    double length_;
    std::vector<Vec2> points_;
    double closure_defect_;
    double tangent_defect_;
    std::string source_;
    std::vector<double> corners_;
    bool self_intersecting_ = false;
};

/// Equilateral polygon; vertex indices are identified modulo N.
class Polygon {
public:
    Polygon(std::vector<Vec2> vertices, double side_length);

    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    double side_length() const { return side_length_; }

    /// Measured max | |y_{n+1} - y_n| - l | / l.
    double equilateral_tolerance() const { return equilateral_tolerance_; }

    Vec2 vertex(int i) const {
        const int n = size();
        i %= n;
        return vertices_[i < 0 ? i + n : i];
    }

    double chord(int i, int m) const { return distance(vertex(i + m), vertex(i)); }

private:
    std::vector<Vec2> vertices_;
    double side_length_;
    double equilateral_tolerance_;
};

/// Circle of circumference `length`, sampled at `grid_size` points.
ArcLengthCurve build_circle(double length, int grid_size);

/// Integrates the curvature parametrization of the spec: bending angle in
/// closed form, positions by per-interval Gauss quadrature. Records the
/// closure defect; does not force closure (see close_curve).
ArcLengthCurve build_from_curvature(const CurvatureSpec& spec, int grid_size);

/// Newton projection on the (a1, b1) mode pair driving both closure
/// integrals to zero, followed by a uniform length renormalization.
/// Throws non_closable_error when the projection does not converge in
/// `max_iterations`.
std::pair<ArcLengthCurve, CurvatureSpec>
close_curve(const ArcLengthCurve& curve, const CurvatureSpec& spec,
            int max_iterations = 50);

/// Two circular arcs of radius R and arc length L/2 joined at two corners;
/// lens-shaped for R > L/2pi, apple-shaped for L/4pi < R < L/2pi, a circle
/// at R = L/2pi. Requires R > L/(4 pi).
ArcLengthCurve build_lens(double R, double length, int grid_size);

/// Segment of length a, U-turn of radius r, segment of length b, U-turn
/// back: closed bending angle (tangent defect 0, winding 1) but an endpoint
/// gap |a - b|. Only the chord functionals are defined on it.
ArcLengthCurve build_paperclip(double a, double b, double r, int grid_size);

/// Ellipse with the given major/minor axis ratio, scaled to total length,
/// resampled to uniform arc length by Newton inversion of the cumulative
/// arc-length function.
ArcLengthCurve build_ellipse(double axis_ratio, double length, int grid_size);

/// Trigonometric resampling of a smooth closed curve onto a new grid.
ArcLengthCurve resample(const ArcLengthCurve& curve, int new_grid_size);

Polygon build_regular_polygon(int n_vertices, double side_length);

/// Rhombus with side l and half-angle phi in (0, pi/2]; diagonals
/// 2 l sin(phi) and 2 l cos(phi). phi = pi/2 degenerates to the square.
Polygon rhomboid(double phi, double side_length);

/// Projects perturbed vertices back onto the closed equilateral family:
/// rescale each edge direction to length `side`, re-accumulate, distribute
/// the closing gap uniformly, and iterate to convergence.
Polygon reproject_equilateral(const Polygon& polygon, double side_length,
                              int max_iterations = 200);

} // namespace leakyloop::geometry
