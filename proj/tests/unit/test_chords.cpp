#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "leakyloop/chords.hpp"
#include "leakyloop/errors.hpp"
#include "leakyloop/geometry.hpp"

using namespace leakyloop;
using namespace leakyloop::chords;
using geometry::build_circle;
using geometry::build_ellipse;
using geometry::build_lens;
using geometry::build_paperclip;
using geometry::build_regular_polygon;
using geometry::rhomboid;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("chord_moment on the circle") {
    const auto c = build_circle(kTwoPi, 1024);
    // All chords at u = L/2 are diameters: 2pi * 2^2.
    CHECK(chord_moment(c, kPi, 2.0).value == doctest::Approx(8.0 * kPi).epsilon(1e-13));

    const auto unit = build_circle(1.0, 1024);
    CHECK(chord_moment(unit, 0.25, 1.0).value ==
          doctest::Approx(std::sin(kPi / 4.0) / kPi).epsilon(1e-13));
}

TEST_CASE("chord_moment argument handling") {
    const auto c = build_circle(kTwoPi, 64);
    CHECK_THROWS_AS(chord_moment(c, kPi, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(chord_moment(c, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(chord_moment(c, kPi * 1.01, 2.0), std::invalid_argument);
    // Off-grid u is refused, not interpolated.
    CHECK_THROWS_AS(chord_moment(c, kPi + 0.01, 2.0), std::invalid_argument);

    // Negative exponents demand nonvanishing chords: a self-touching curve
    // (coincident samples half a period apart) must be refused.
    auto pts = build_circle(kTwoPi, 64).points();
    pts[32] = pts[0];
    const geometry::ArcLengthCurve touching(kTwoPi, std::move(pts), 0.0, 0.0, "file");
    CHECK_THROWS_AS(chord_moment(touching, kPi, -2.0), singular_chord_error);
    CHECK(chord_moment(touching, kPi, 2.0).value > 0.0);  // p > 0 stays defined

    // Same guard on the polygon side: exactly coincident opposite vertices.
    const geometry::Polygon folded({{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}},
                                   1.0);
    CHECK_THROWS_AS(check_discrete(folded, 2, 2.0, Sign::Minus),
                    singular_chord_error);
}

TEST_CASE("degenerate doubled segment reaches L^3/12 at u = L/2") {
    const auto clip = build_paperclip(1.0, 1.0, 1e-3, 8192);
    const double L = clip.length();
    CHECK(chord_moment(clip, 0.5 * L, 2.0).value ==
          doctest::Approx(L * L * L / 12.0).epsilon(1e-2));
}

TEST_CASE("asymmetric paperclip exceeds the circle bound at u = L/2") {
    // Open curve (bending angle periodic, endpoints apart): the closure
    // condition cannot be dropped from the chord inequalities.
    const auto clip = build_paperclip(1.0, 0.02, 0.005, 8192);
    const double L = clip.length();
    CHECK(chord_moment(clip, 0.5 * L, 2.0).value > L * L * L / (kPi * kPi));
}

TEST_CASE("check_continuous saturates on the circle and holds on the ellipse") {
    const auto c = build_circle(kTwoPi, 1024);
    for (double p : {0.5, 1.0, 2.0}) {
        const auto plus = check_continuous(c, kPi / 2.0, p, Sign::Plus);
        CHECK(plus.verdict == Verdict::EqualityWithinTol);
        const auto minus = check_continuous(c, kPi / 2.0, p, Sign::Minus);
        CHECK(minus.verdict == Verdict::EqualityWithinTol);
        CHECK(plus.rhs == doctest::Approx(c_plus_rhs(kTwoPi, kPi / 2.0, p)).epsilon(1e-14));
    }

    const auto e = build_ellipse(2.0, kTwoPi, 1024);
    const auto rep = check_continuous(e, kPi / 2.0, 2.0, Sign::Plus);
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(rep.margin > 0.0);
}

TEST_CASE("circle saturation property: 50 random grid separations") {
    const auto c = build_circle(1.0, 2048);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(1, 1024);
    std::uniform_real_distribution<double> expo(0.01, 2.0);
    for (int t = 0; t < 50; ++t) {
        const double u = pick(rng) * c.grid_step();
        const double p = expo(rng);
        const auto rep = check_continuous(c, u, p, Sign::Plus, 1e-8);
        CHECK(rep.verdict == Verdict::EqualityWithinTol);
        CHECK(std::abs(rep.margin) <= 1e-8 * rep.rhs);
    }
}

TEST_CASE("chord moment scaling property") {
    const auto e = build_ellipse(1.7, kTwoPi, 512);
    const double c = 2.5;
    std::vector<Vec2> scaled;
    scaled.reserve(512);
    for (const auto& p : e.points()) scaled.push_back(c * p);
    const geometry::ArcLengthCurve es(c * kTwoPi, std::move(scaled),
                                      c * e.closure_defect(), 0.0, "file");
    for (double p : {0.5, 1.0, 2.0}) {
        const double base = chord_moment(e, kPi / 2.0, p).value;
        const double big = chord_moment(es, c * kPi / 2.0, p).value;
        CHECK(big == doctest::Approx(std::pow(c, 1.0 + p) * base).epsilon(1e-10));
    }
}

TEST_CASE("lens closed form matches the chord quadrature") {
    const double L = kTwoPi;
    const double R = L / kPi;
    const auto lens = build_lens(R, L, 4000);
    const double u = 0.5 * L;
    const double quad = chord_moment(lens, u, 2.0).value;
    const double closed = lens_c2_closed_form(R, L, u);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
    // Strictly below the circle value away from R = L/2pi.
    CHECK(closed < c_plus_rhs(L, u, 2.0));

    const auto rep = check_continuous(lens, u, 2.0, Sign::Plus);
    CHECK(rep.verdict == Verdict::Holds);
}

TEST_CASE("lens closed form specializations") {
    const double L = kTwoPi;
    // R = L/2pi restores the circle formula (the corner term dies).
    for (double u : {0.4, 1.1, 0.5 * L})
        CHECK(lens_c2_closed_form(L / kTwoPi, L, u) ==
              doctest::Approx(c_plus_rhs(L, u, 2.0)).epsilon(1e-13));
    // R -> infinity approaches the doubled-segment limit L u^2 - 4/3 u^3.
    for (double u : {0.5, 1.5, 0.5 * L}) {
        const double limit = L * u * u - 4.0 / 3.0 * u * u * u;
        CHECK(lens_c2_closed_form(1e4 * L, L, u) ==
              doctest::Approx(limit).epsilon(1e-6));
    }
    // The degenerate value stays below the circle's across the u range
    // (equivalently sin^2 x > x^2 - (4/3pi) x^3 on (0, pi/2)).
    for (int j = 1; j <= 20; ++j) {
        const double u = 0.5 * L * j / 20.0;
        CHECK(L * u * u - 4.0 / 3.0 * u * u * u < c_plus_rhs(L, u, 2.0));
    }
    CHECK_THROWS_AS(lens_c2_closed_form(L / (4.0 * kPi), L, 1.0),
                    std::invalid_argument);
}

TEST_CASE("check_discrete: regular polygons saturate, the rhomboid violates p > 2") {
    for (int n : {4, 5, 8}) {
        const auto reg = build_regular_polygon(n, 1.0);
        for (int m = 1; m <= n / 2; ++m)
            for (double p : {0.5, 1.0, 2.0, 3.0}) {
                CHECK(check_discrete(reg, m, p, Sign::Plus).verdict ==
                      Verdict::EqualityWithinTol);
                CHECK(check_discrete(reg, m, p, Sign::Minus).verdict ==
                      Verdict::EqualityWithinTol);
            }
    }

    const auto rh = rhomboid(kPi / 3.0, 1.0);
    const auto p3 = check_discrete(rh, 2, 3.0, Sign::Plus);
    CHECK(p3.verdict == Verdict::Violated);
    // The vertex arithmetic reduces (after the regular-square
    // normalization 2^{p/2-1}) to sin^3 + cos^3 at the half-angle.
    const double reduced = p3.lhs / (std::pow(2.0, 0.5) * p3.rhs);
    CHECK(reduced ==
          doctest::Approx(std::pow(std::sin(kPi / 3.0), 3) +
                          std::pow(std::cos(kPi / 3.0), 3)).epsilon(1e-14));

    const auto p2 = check_discrete(rh, 2, 2.0, Sign::Plus);
    CHECK(p2.verdict == Verdict::EqualityWithinTol);  // sin^2 + cos^2 = 1

    CHECK_THROWS_AS(check_discrete(rh, 0, 1.0, Sign::Plus), std::invalid_argument);
    CHECK_THROWS_AS(check_discrete(rh, 3, 1.0, Sign::Plus), std::invalid_argument);
}

TEST_CASE("implication audit: continuous families") {
    const auto e = build_ellipse(1.5, kTwoPi, 1200);
    const auto audit = implication_audit(e, kTwoPi / 3.0, 2.0, 1.0);
    CHECK(audit.consistent);
    CHECK(audit.plus_p.verdict != Verdict::Violated);
    CHECK(audit.plus_pprime.verdict != Verdict::Violated);
    CHECK(audit.minus_p.verdict != Verdict::Violated);
    CHECK(audit.minus_pprime.verdict != Verdict::Violated);

    // Circle: every report is an equality.
    const auto c = build_circle(kTwoPi, 1200);
    const auto ca = implication_audit(c, kTwoPi / 3.0, 2.0, 1.0);
    CHECK(ca.consistent);
    CHECK(ca.plus_p.verdict == Verdict::EqualityWithinTol);
    CHECK(ca.minus_pprime.verdict == Verdict::EqualityWithinTol);
}

TEST_CASE("implication audit: rhomboid violation is vacuously consistent") {
    const auto rh = rhomboid(kPi / 3.0, 1.0);
    const auto audit = implication_audit(rh, 2, 3.0, 2.0);
    CHECK(audit.plus_p.verdict == Verdict::Violated);
    CHECK(audit.plus_pprime.verdict == Verdict::EqualityWithinTol);
    CHECK(audit.consistent);
    CHECK_THROWS_AS(implication_audit(rh, 2, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("D-family local maximality under equilateral perturbations") {
    std::mt19937 rng(0);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int n : {5, 6, 8}) {
        const auto reg = build_regular_polygon(n, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Vec2> verts = reg.vertices();
            for (auto& v : verts) {
                v.x += noise(rng);
                v.y += noise(rng);
            }
            const auto pert =
                geometry::reproject_equilateral(geometry::Polygon(verts, 1.0), 1.0);
            REQUIRE(pert.equilateral_tolerance() <= 1e-12);
            for (int m = 1; m <= n / 2; ++m) {
                const auto rep = check_discrete(pert, m, 1.0, Sign::Plus, 1e-9);
                CHECK(rep.verdict != Verdict::Violated);
            }
        }
    }
}

TEST_CASE("jensen chain audit: circle is exactly neutral") {
    const auto c = build_circle(kTwoPi, 512);
    const auto audit = jensen_chain_audit(c, 1.0);
    CHECK(std::abs(audit.f_kappa) <= 1e-12);
    CHECK(std::abs(audit.jensen_bound) <= 1e-12);
    CHECK(audit.chain_holds);
    CHECK(audit.c1_holds_all);
    CHECK(audit.bound_consistent);
}

TEST_CASE("jensen chain audit: ellipse orders as the reduction requires") {
    const auto e = build_ellipse(2.0, kTwoPi, 512);
    for (double kappa : {0.5, 1.0, 2.0}) {
        const auto audit = jensen_chain_audit(e, kappa);
        CHECK(audit.f_kappa > 0.0);
        CHECK(audit.chain_holds);
        CHECK(audit.c1_holds_all);
        CHECK(audit.bound_consistent);
        CHECK(audit.f_kappa / kTwoPi >= audit.jensen_bound - audit.tolerance);
    }
    CHECK_THROWS_AS(jensen_chain_audit(e, 0.0), std::invalid_argument);
}
