#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "leakyloop/chords.hpp"
#include "leakyloop/errors.hpp"
#include "leakyloop/geometry.hpp"
#include "leakyloop/spectral.hpp"
#include "support/oracles.hpp"

using namespace leakyloop;
using geometry::build_circle;
using geometry::build_ellipse;
using geometry::CurvatureSpec;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("assembled matrix is symmetric with finite entries") {
    const auto c = build_circle(kTwoPi, 128);
    const auto m = spectral::assemble_bs_matrix(c, 1.0, 0.6);
    CHECK(m.symmetry_defect() <= 1e-14);
    CHECK(m.scheme() == "kress-log");
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) CHECK(std::isfinite(m.entry(i, j)));
}

TEST_CASE("assembly preconditions") {
    const auto open = geometry::build_paperclip(1.0, 0.5, 0.01, 64);
    CHECK_THROWS_AS(spectral::assemble_bs_matrix(open, 1.0, 0.6),
                    std::invalid_argument);
    const auto c = build_circle(kTwoPi, 64);
    CHECK_THROWS_AS(spectral::assemble_bs_matrix(c, -1.0, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(spectral::assemble_bs_matrix(c, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("lambda_max self-convergence under grid doubling") {
    const auto c256 = build_circle(kTwoPi, 256);
    const auto c512 = build_circle(kTwoPi, 512);
    const double l256 = spectral::lambda_max(c256, 1.0, 0.6);
    const double l512 = spectral::lambda_max(c512, 1.0, 0.6);
    CHECK(std::abs(l256 - l512) <= 1e-8);
}

TEST_CASE("lambda_max scaling covariance") {
    // (alpha, kappa) on a loop of length L matches (c alpha, c kappa) on the
    // same loop scaled by 1/c.
    const double l1 = spectral::lambda_max(build_circle(kTwoPi, 256), 1.0, 0.6);
    const double l2 = spectral::lambda_max(build_circle(kPi, 256), 2.0, 1.2);
    CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("Perron vector on the circle is constant and L^2 normalized") {
    const auto c = build_circle(kTwoPi, 256);
    const auto pair = spectral::max_eigenpair(spectral::assemble_bs_matrix(c, 1.0, 0.5));
    double mean = 0.0;
    for (double v : pair.vector) mean += v;
    mean /= pair.vector.size();
    for (double v : pair.vector) {
        CHECK(v > 0.0);
        CHECK(std::abs(v - mean) <= 1e-8 * mean);
    }
    double norm2 = 0.0;
    for (double v : pair.vector) norm2 += v * v;
    CHECK(norm2 * c.grid_step() == doctest::Approx(1.0).epsilon(1e-12));
    // Constant eigenfunction value is L^{-1/2}.
    CHECK(mean == doctest::Approx(1.0 / std::sqrt(kTwoPi)).epsilon(1e-10));
}

TEST_CASE("lambda_max decreases strictly in kappa") {
    const auto c = build_circle(kTwoPi, 256);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 10; ++i) {
        const double kappa = 0.2 * i;
        const double lambda = spectral::lambda_max(c, 1.0, kappa);
        CHECK(lambda < prev);
        prev = lambda;
    }
}

TEST_CASE("large-kappa decay follows the line symbol") {
    // The operator norm tends to 0; quantitatively it tracks alpha/(2 kappa),
    // the straight-line symbol maximum, once the kernel is localized.
    const auto c = build_circle(kTwoPi, 512);
    double prev = std::numeric_limits<double>::infinity();
    for (double kappa : {10.0, 20.0, 40.0}) {
        const auto m = spectral::assemble_bs_matrix(c, 1.0, kappa);
        CHECK(m.scheme() == "local-trapezoid");
        const double lambda = spectral::max_eigenpair(m).lambda;
        CHECK(lambda < prev);
        CHECK(lambda == doctest::Approx(0.5 / kappa).epsilon(0.15));
        prev = lambda;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("ground state on the circle") {
    const auto gs = spectral::ground_state(build_circle(kTwoPi, 256), 1.0, 1e-8);
    CHECK(gs.energy < 0.0);
    CHECK(gs.energy == doctest::Approx(-gs.kappa_star * gs.kappa_star));
    CHECK(gs.lambda_residual <= 1e-7);
    CHECK(gs.bisection_iterations <= 60);
    CHECK(gs.grid_size == 256);

    const auto gs512 = spectral::ground_state(build_circle(kTwoPi, 512), 1.0, 1e-8);
    CHECK(std::abs(gs.kappa_star - gs512.kappa_star) <= 1e-6);
}

TEST_CASE("ground state is strictly monotone in the coupling") {
    const auto c = build_circle(kTwoPi, 256);
    const auto weak = spectral::ground_state(c, 1.0, 1e-8);
    const auto strong = spectral::ground_state(c, 2.0, 1e-8);
    CHECK(strong.energy < weak.energy);
}

TEST_CASE("kappa* grid-doubling differences contract") {
    const auto e64 = build_ellipse(2.0, kTwoPi, 64);
    const auto e128 = build_ellipse(2.0, kTwoPi, 128);
    const auto e256 = build_ellipse(2.0, kTwoPi, 256);
    const double k64 = spectral::ground_state(e64, 1.0, 1e-12).kappa_star;
    const double k128 = spectral::ground_state(e128, 1.0, 1e-12).kappa_star;
    const double k256 = spectral::ground_state(e256, 1.0, 1e-12).kappa_star;
    const double d1 = std::abs(k64 - k128);
    const double d2 = std::abs(k128 - k256);
    // At least a factor 4 per doubling until the roundoff floor.
    CHECK((d2 <= 0.25 * d1 || d2 <= 5e-12));
}

TEST_CASE("local maximality of the circle under a closed n=3 deformation") {
    const CurvatureSpec raw(kTwoPi, {{3, 1.0, 0.7}});
    const auto spec = raw.scaled(0.05 / raw.sup_norm_measured());
    const auto built = geometry::build_from_curvature(spec, 512);
    const auto [closed, adjusted] = geometry::close_curve(built, spec);
    REQUIRE(closed.is_closed());

    const auto gs_circle = spectral::ground_state(build_circle(kTwoPi, 512), 1.0, 1e-9);
    const auto gs_curve = spectral::ground_state(closed, 1.0, 1e-9);
    // Perturbation must lower the ground state beyond the kappa resolution.
    const double resolution = 3.0 * 2.0 * gs_circle.kappa_star * 1e-9;
    CHECK(gs_curve.energy < gs_circle.energy - resolution);
}

TEST_CASE("variational consistency: positive kernel excess raises kappa*") {
    const double tol = 1e-9;
    const auto circle = build_circle(kTwoPi, 512);
    const auto gs_circle = spectral::ground_state(circle, 1.0, tol);
    const auto ellipse = build_ellipse(1.5, kTwoPi, 512);
    const auto audit = chords::jensen_chain_audit(ellipse, gs_circle.kappa_star);
    REQUIRE(audit.f_kappa >= 0.0);
    const auto gs_ellipse = spectral::ground_state(ellipse, 1.0, tol);
    CHECK(gs_ellipse.kappa_star >= gs_circle.kappa_star - 10.0 * tol);
}

TEST_CASE("unresolvable bound state raises the dedicated error") {
    const auto coarse = build_circle(kTwoPi, 64);
    CHECK_THROWS_AS(spectral::ground_state(coarse, 1e-6, 1e-8),
                    no_bound_state_error);
}

TEST_CASE("eigenfunction evaluation") {
    const auto c = build_circle(kTwoPi, 256);
    const auto gs = spectral::ground_state(c, 1.0, 1e-8);

    // Rotational symmetry: equal radius, equal value.
    const double p1 = spectral::eigenfunction_at(gs, c, {0.37, 0.0});
    const double p2 = spectral::eigenfunction_at(gs, c, {0.0, -0.37});
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-8));

    // Positivity at scattered points.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    int checked = 0;
    while (checked < 100) {
        const Vec2 x{coord(rng), coord(rng)};
        if (std::abs(x.norm() - 1.0) < 0.05) continue;  // stay off the loop
        CHECK(spectral::eigenfunction_at(gs, c, x) > 0.0);
        ++checked;
    }

    // Decay away from the support.
    const double near = spectral::eigenfunction_at(gs, c, {2.0, 0.0});
    const double far = spectral::eigenfunction_at(gs, c, {10.0, 0.0});
    CHECK(far < near);

    CHECK_THROWS_AS(spectral::eigenfunction_at(gs, c, c.point(12)),
                    point_on_support_error);
}

TEST_CASE("strong-coupling reference operator") {
    const CurvatureSpec flat(kTwoPi, {});
    CHECK(spectral::strong_coupling_reference(flat, 16) ==
          doctest::Approx(-0.25).epsilon(1e-12));
    const CurvatureSpec flat1(1.0, {});
    CHECK(spectral::strong_coupling_reference(flat1, 16) ==
          doctest::Approx(-kPi * kPi).epsilon(1e-12));

    // Variational bound from the constant trial function:
    // lambda_1 <= -pi^2/L^2 - (1/4L) ∫ g^2.
    const CurvatureSpec g(kTwoPi, {{2, 0.2, -0.1}, {3, 0.0, 0.15}});
    double coeff2 = 0.0;
    for (const auto& m : g.modes()) coeff2 += m.a * m.a + m.b * m.b;
    const double int_g2 = 0.5 * kTwoPi * coeff2;
    const double bound = -kPi * kPi / (kTwoPi * kTwoPi) - int_g2 / (4.0 * kTwoPi);
    CHECK(spectral::strong_coupling_reference(g, 32) <= bound + 1e-10);

    // Converged in the mode cutoff.
    const CurvatureSpec big(kTwoPi, {{2, 0.4, 0.0}, {5, 0.0, 0.3}});
    CHECK(std::abs(spectral::strong_coupling_reference(big, 32) -
                   spectral::strong_coupling_reference(big, 64)) <= 1e-10);
}
