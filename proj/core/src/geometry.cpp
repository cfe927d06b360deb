#include "leakyloop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakyloop/errors.hpp"
#include "leakyloop/quadrature.hpp"

namespace leakyloop::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void validate_grid(int n) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("grid size must be even and >= 16");
}

void validate_length(double length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("curve length must be positive and finite");
}

// Proper-crossing test of segments (a,b) and (c,d); shared endpoints and
// tangential touches at sample resolution do not count.
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

// Segment sweep at sample resolution: sort by min-x, compare only segments
// with overlapping x-intervals, skip neighbours along the curve.
bool detect_self_intersection(const std::vector<Vec2>& pts, bool include_wrap) {
    const int n = static_cast<int>(pts.size());
    const int nseg = include_wrap ? n : n - 1;

    struct Seg {
        double xmin, xmax;
        int idx;
    };
    std::vector<Seg> segs(nseg);
    for (int i = 0; i < nseg; ++i) {
        const Vec2 a = pts[i], b = pts[(i + 1) % n];
        segs[i] = {std::min(a.x, b.x), std::max(a.x, b.x), i};
    }
    std::sort(segs.begin(), segs.end(),
              [](const Seg& s, const Seg& t) { return s.xmin < t.xmin; });

    for (int i = 0; i < nseg; ++i) {
        for (int j = i + 1; j < nseg && segs[j].xmin <= segs[i].xmax; ++j) {
            const int p = segs[i].idx, q = segs[j].idx;
            const int gap = std::abs(p - q);
            if (gap <= 1 || gap == nseg - 1 || (include_wrap && gap == n - 1))
                continue;
            if (segments_cross(pts[p], pts[(p + 1) % n], pts[q], pts[(q + 1) % n]))
                return true;
        }
    }
    return false;
}

} // namespace

// ---------------------------------------------------------------------------
// CurvatureSpec

CurvatureSpec::CurvatureSpec(double length, std::vector<CurvatureMode> modes)
    : length_(length), modes_(std::move(modes)) {
    validate_length(length_);
    std::sort(modes_.begin(), modes_.end(),
              [](const CurvatureMode& a, const CurvatureMode& b) { return a.n < b.n; });
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].n < 1)
            throw std::invalid_argument("curvature mode indices must be >= 1");
        if (i > 0 && modes_[i].n == modes_[i - 1].n)
            throw std::invalid_argument("curvature mode indices must be distinct");
    }
    double coeff_sum = 0.0;
    for (const auto& m : modes_) coeff_sum += std::abs(m.a) + std::abs(m.b);
    sup_norm_bound_ = coeff_sum * length_;
}

double CurvatureSpec::g(double s) const {
    const double w = kTwoPi / length_;
    double val = 0.0;
    for (const auto& m : modes_)
        val += m.a * std::sin(w * m.n * s) + m.b * std::cos(w * m.n * s);
    return val;
}

double CurvatureSpec::g_integral(double s) const {
    const double w = kTwoPi / length_;
    double val = 0.0;
    for (const auto& m : modes_) {
        const double wn = w * m.n;
        val += m.a * (1.0 - std::cos(wn * s)) / wn + m.b * std::sin(wn * s) / wn;
    }
    return val;
}

double CurvatureSpec::bending_angle(double s) const {
    return kTwoPi * s / length_ + g_integral(s);
}

double CurvatureSpec::sup_norm_measured(int samples) const {
    double sup = 0.0;
    for (int i = 0; i < samples; ++i)
        sup = std::max(sup, std::abs(g(i * length_ / samples)));
    return sup * length_;
}

CurvatureSpec CurvatureSpec::scaled(double factor) const {
    std::vector<CurvatureMode> m = modes_;
    for (auto& mode : m) {
        mode.a *= factor;
        mode.b *= factor;
    }
    return CurvatureSpec(length_, std::move(m));
}

CurvatureSpec CurvatureSpec::with_first_mode(double a1, double b1) const {
    std::vector<CurvatureMode> m = modes_;
    auto it = std::find_if(m.begin(), m.end(),
                           [](const CurvatureMode& mode) { return mode.n == 1; });
    if (it != m.end()) {
        it->a = a1;
        it->b = b1;
    } else {
        m.push_back({1, a1, b1});
    }
    return CurvatureSpec(length_, std::move(m));
}

// ---------------------------------------------------------------------------
// ArcLengthCurve

ArcLengthCurve::ArcLengthCurve(double length, std::vector<Vec2> points,
                               double closure_defect, double tangent_defect,
                               std::string source, std::vector<double> corners)
    : length_(length),
      points_(std::move(points)),
      closure_defect_(closure_defect),
      tangent_defect_(tangent_defect),
      source_(std::move(source)),
      corners_(std::move(corners)) {
    validate_length(length_);
    validate_grid(static_cast<int>(points_.size()));
    if (closure_defect_ < 0.0 || tangent_defect_ < 0.0)
        throw std::invalid_argument("defects must be nonnegative");
    self_intersecting_ = detect_self_intersection(points_, is_closed(1e-6));
}

double ArcLengthCurve::polyline_length() const {
    const int n = grid_size();
    const bool wrap = is_closed(1e-6);
    KahanSum acc;
    for (int i = 0; i + 1 < n; ++i) acc.add(distance(points_[i + 1], points_[i]));
    if (wrap) acc.add(distance(points_[0], points_[n - 1]));
    return acc.sum;
}

// ---------------------------------------------------------------------------
// Builders

ArcLengthCurve build_circle(double length, int grid_size) {
    validate_length(length);
    validate_grid(grid_size);
    const double radius = length / kTwoPi;
    std::vector<Vec2> pts(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double t = kTwoPi * i / grid_size;
        pts[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return ArcLengthCurve(length, std::move(pts), 0.0, 0.0, "circle");
}

namespace {

// Position samples from the bending angle: per-interval Gauss quadrature of
// (cos beta, sin beta). beta is analytic, so each interval is resolved far
// below roundoff; Kahan accumulation keeps the endpoint honest.
struct CurvatureIntegration {
    std::vector<Vec2> points;  // grid_size + 1 entries, endpoint included
    double closure_defect;
};

CurvatureIntegration integrate_curvature(const CurvatureSpec& spec, int grid_size) {
    const double L = spec.length();
    const double h = L / grid_size;
    const auto& rule = quadrature::gauss_legendre(20);

    CurvatureIntegration out;
    out.points.resize(grid_size + 1);
    out.points[0] = {0.0, 0.0};
    KahanSum x, y;
    for (int i = 0; i < grid_size; ++i) {
        const double mid = (i + 0.5) * h, half = 0.5 * h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = mid + half * rule.nodes[q];
            const double beta = spec.bending_angle(s);
            const double w = half * rule.weights[q];
            x.add(w * std::cos(beta));
            y.add(w * std::sin(beta));
        }
        out.points[i + 1] = {x.sum, y.sum};
    }
    out.closure_defect = out.points[grid_size].norm();
    return out;
}

} // namespace

ArcLengthCurve build_from_curvature(const CurvatureSpec& spec, int grid_size) {
    validate_grid(grid_size);
    auto integ = integrate_curvature(spec, grid_size);
    integ.points.pop_back();  // keep samples at i*L/N, i = 0..N-1
    // beta(L) - beta(0) = 2 pi exactly: g has zero mean by construction.
    return ArcLengthCurve(spec.length(), std::move(integ.points),
                          integ.closure_defect, 0.0, "curvature");
}

std::pair<ArcLengthCurve, CurvatureSpec>
close_curve(const ArcLengthCurve& curve, const CurvatureSpec& spec,
            int max_iterations) {
    const double L = spec.length();
    if (!std::isfinite(curve.closure_defect()))
        throw std::invalid_argument("close_curve: input defect must be finite");
    if (std::abs(curve.length() - L) > 1e-12 * L)
        throw std::invalid_argument("close_curve: curve/spec length mismatch");

    // Closure integrals and their derivatives w.r.t. the (a1, b1) pair,
    // evaluated with a fixed fine composite Gauss rule.
    const int intervals = std::max(2048, curve.grid_size());
    const auto& rule = quadrature::gauss_legendre(16);
    const double h = L / intervals;

    auto closure_system = [&](const CurvatureSpec& s, double out[6]) {
        KahanSum f1, f2, j11, j12, j21, j22;
        for (int i = 0; i < intervals; ++i) {
            const double mid = (i + 0.5) * h, half = 0.5 * h;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = mid + half * rule.nodes[q];
                const double w = half * rule.weights[q];
                const double beta = s.bending_angle(t);
                const double cb = std::cos(beta), sb = std::sin(beta);
                // d beta / d a1 and d beta / d b1
                const double da = (L / kTwoPi) * (1.0 - std::cos(kTwoPi * t / L));
                const double db = (L / kTwoPi) * std::sin(kTwoPi * t / L);
                f1.add(w * cb);
                f2.add(w * sb);
                j11.add(-w * sb * da);
                j12.add(-w * sb * db);
                j21.add(w * cb * da);
                j22.add(w * cb * db);
            }
        }
        out[0] = f1.sum;
        out[1] = f2.sum;
        out[2] = j11.sum;
        out[3] = j12.sum;
        out[4] = j21.sum;
        out[5] = j22.sum;
    };

    double a1 = 0.0, b1 = 0.0;
    for (const auto& m : spec.modes())
        if (m.n == 1) {
            a1 = m.a;
            b1 = m.b;
        }

    CurvatureSpec current = spec.with_first_mode(a1, b1);
    const double tol = 1e-12 * L;
    for (int it = 0; it < max_iterations; ++it) {
        double sys[6];
        closure_system(current, sys);
        const double defect = std::hypot(sys[0], sys[1]);
        if (!std::isfinite(defect))
            throw non_closable_error("close_curve: closure integrals diverged");
        if (defect <= tol) {
            ArcLengthCurve closed = build_from_curvature(current, curve.grid_size());
            // Unit-speed parametrization: total length is already exactly L,
            // so the uniform renormalization factor is 1 up to roundoff.
            return {std::move(closed), current};
        }
        const double det = sys[2] * sys[5] - sys[3] * sys[4];
        if (std::abs(det) < 1e-14 * L * L)
            throw non_closable_error("close_curve: singular closure Jacobian");
        const double da = (sys[0] * sys[5] - sys[3] * sys[1]) / det;
        const double db = (sys[2] * sys[1] - sys[0] * sys[4]) / det;
        a1 -= da;
        b1 -= db;
        if (!std::isfinite(a1) || !std::isfinite(b1) ||
            std::abs(a1) * L > 50.0 || std::abs(b1) * L > 50.0)
            throw non_closable_error("close_curve: Newton left the perturbative regime");
        current = current.with_first_mode(a1, b1);
    }
    throw non_closable_error("close_curve: no convergence within iteration budget");
}

ArcLengthCurve build_lens(double R, double length, int grid_size) {
    validate_length(length);
    validate_grid(grid_size);
    if (!(R > 0.0) || R <= length / (4.0 * kPi))
        throw std::invalid_argument("build_lens: requires R > L / (4 pi)");

    const double psi = length / (2.0 * R);  // angle subtended by each arc
    const double half = 0.5 * length;

    // Corner-to-corner construction; corners end up at (+-d, 0),
    // d = R sin(L / 4R).
    auto raw = [&](double s) -> Vec2 {
        if (s <= half)
            return {R * std::sin(s / R), R * (1.0 - std::cos(s / R))};
        const double t = s - half;
        return {R * std::sin(psi) - R * std::sin(t / R),
                R * (1.0 - std::cos(psi)) + R * (std::cos(t / R) - 1.0)};
    };
    const Vec2 far_corner = raw(half);
    const Vec2 mid = 0.5 * far_corner;
    const double rot = -0.5 * psi;

    std::vector<Vec2> pts(grid_size);
    for (int i = 0; i < grid_size; ++i)
        pts[i] = (raw(i * length / grid_size) - mid).rotated(rot);

    std::vector<double> corners;
    if (std::abs(kPi - psi) > 1e-12) corners = {0.0, half};
    return ArcLengthCurve(length, std::move(pts), 0.0, 0.0, "lens",
                          std::move(corners));
}

ArcLengthCurve build_paperclip(double a, double b, double r, int grid_size) {
    validate_grid(grid_size);
    if (!(a > 0.0) || !(b > 0.0) || !(r > 0.0))
        throw std::invalid_argument("build_paperclip: a, b, r must be positive");

    const double turn = kPi * r;
    const double length = a + b + 2.0 * turn;
    auto at = [&](double s) -> Vec2 {
        if (s <= a) return {s, 0.0};
        s -= a;
        if (s <= turn) return {a + r * std::sin(s / r), r * (1.0 - std::cos(s / r))};
        s -= turn;
        if (s <= b) return {a - s, 2.0 * r};
        s -= b;
        return {a - b - r * std::sin(s / r), r + r * std::cos(s / r)};
    };
    std::vector<Vec2> pts(grid_size);
    for (int i = 0; i < grid_size; ++i) pts[i] = at(i * length / grid_size);
    // Endpoint gap |a - b| by construction; bending angle closes exactly.
    return ArcLengthCurve(length, std::move(pts), std::abs(a - b), 0.0, "paperclip");
}

ArcLengthCurve build_ellipse(double axis_ratio, double length, int grid_size) {
    validate_length(length);
    validate_grid(grid_size);
    if (!(axis_ratio >= 1.0))
        throw std::invalid_argument("build_ellipse: axis ratio must be >= 1");

    // Unit-minor-axis ellipse, then a global rescale to the requested length.
    auto speed = [&](double t) {
        const double st = axis_ratio * std::sin(t), ct = std::cos(t);
        return std::sqrt(st * st + ct * ct);
    };
    const int fine = 4096;
    std::vector<double> cum(fine + 1, 0.0);
    for (int k = 0; k < fine; ++k)
        cum[k + 1] = cum[k] + quadrature::gauss_panel(speed, kTwoPi * k / fine,
                                                      kTwoPi * (k + 1) / fine, 16);
    const double total = cum[fine];

    std::vector<Vec2> pts(grid_size);
    const double scale = length / total;
    for (int i = 0; i < grid_size; ++i) {
        const double target = total * i / grid_size;
        const auto it = std::upper_bound(cum.begin(), cum.end(), target);
        int k = static_cast<int>(it - cum.begin()) - 1;
        k = std::clamp(k, 0, fine - 1);
        double t = kTwoPi * k / fine;
        double arc = cum[k];
        for (int newton = 0; newton < 40; ++newton) {
            const double f = arc + quadrature::gauss_panel(speed, kTwoPi * k / fine, t, 16) -
                             target;
            const double step = f / speed(t);
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        pts[i] = {scale * axis_ratio * std::cos(t), scale * std::sin(t)};
    }
    return ArcLengthCurve(length, std::move(pts), 0.0, 0.0, "ellipse");
}

ArcLengthCurve resample(const ArcLengthCurve& curve, int new_grid_size) {
    validate_grid(new_grid_size);
    if (!curve.is_closed(1e-6))
        throw std::invalid_argument(
            "resample: trigonometric interpolation needs a closed curve");
    const int n = curve.grid_size();
    const auto& pts = curve.points();

    // Real trigonometric interpolation of the periodic coordinate functions.
    const int half = n / 2;
    std::vector<double> ax(half + 1, 0.0), bx(half + 1, 0.0);
    std::vector<double> ay(half + 1, 0.0), by(half + 1, 0.0);
    for (int k = 0; k <= half; ++k) {
        double cax = 0.0, cbx = 0.0, cay = 0.0, cby = 0.0;
        for (int j = 0; j < n; ++j) {
            const double ang = kTwoPi * k * j / n;
            const double c = std::cos(ang), s = std::sin(ang);
            cax += pts[j].x * c;
            cbx += pts[j].x * s;
            cay += pts[j].y * c;
            cby += pts[j].y * s;
        }
        const double norm = (k == 0 || k == half) ? 1.0 / n : 2.0 / n;
        ax[k] = cax * norm;
        bx[k] = cbx * norm;
        ay[k] = cay * norm;
        by[k] = cby * norm;
    }
    std::vector<Vec2> out(new_grid_size);
    for (int i = 0; i < new_grid_size; ++i) {
        const double frac = static_cast<double>(i) / new_grid_size;
        double x = 0.0, y = 0.0;
        for (int k = 0; k <= half; ++k) {
            const double ang = kTwoPi * k * frac;
            const double c = std::cos(ang), s = std::sin(ang);
            x += ax[k] * c + bx[k] * s;
            y += ay[k] * c + by[k] * s;
        }
        out[i] = {x, y};
    }
    return ArcLengthCurve(curve.length(), std::move(out), curve.closure_defect(),
                          curve.tangent_defect(), curve.source(), curve.corners());
}

} // namespace leakyloop::geometry
