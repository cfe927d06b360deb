#include "leakyloop/chords.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakyloop/errors.hpp"
#include "leakyloop/specfun.hpp"

namespace leakyloop::chords {

namespace {

constexpr double kPi = std::numbers::pi;

int aligned_offset(const geometry::ArcLengthCurve& curve, double u) {
    const double L = curve.length();
    if (!(u > 0.0) || u > 0.5 * L * (1.0 + 1e-12))
        throw std::invalid_argument("chord separation u must lie in (0, L/2]");
    const double h = curve.grid_step();
    const double k_real = u / h;
    const int k = static_cast<int>(std::llround(k_real));
    if (k < 1 || std::abs(k_real - k) > 1e-9)
        throw std::invalid_argument(
            "chord separation u must be grid-aligned; resample the curve first");
    return k;
}

Verdict classify(double margin, double tol) {
    if (std::abs(margin) <= tol) return Verdict::EqualityWithinTol;
    return margin >= 0.0 ? Verdict::Holds : Verdict::Violated;
}

InequalityReport make_report(Family family, double u_or_m, double p, double lhs,
                             double rhs, double tol_abs) {
    InequalityReport r;
    r.family = family;
    r.u_or_m = u_or_m;
    r.p = p;
    r.lhs = lhs;
    r.rhs = rhs;
    // Upper bound for the +p families, lower bound for the -p families.
    const bool upper = family == Family::CPlus || family == Family::DPlus;
    r.margin = upper ? rhs - lhs : lhs - rhs;
    r.tolerance = tol_abs;
    r.verdict = classify(r.margin, tol_abs);
    return r;
}

bool not_violated(const InequalityReport& r) { return r.verdict != Verdict::Violated; }

} // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::CPlus: return "C+p";
        case Family::CMinus: return "C-p";
        case Family::DPlus: return "D+p";
        case Family::DMinus: return "D-p";
    }
    return "?";
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::EqualityWithinTol: return "equality-within-tol";
    }
    return "?";
}

double circle_chord(double length, double u) {
    return (length / kPi) * std::sin(kPi * u / length);
}

double c_plus_rhs(double length, double u, double p) {
    return std::pow(length, 1.0 + p) / std::pow(kPi, p) *
           std::pow(std::sin(kPi * u / length), p);
}

double c_minus_rhs(double length, double u, double p) {
    return std::pow(kPi, p) * std::pow(length, 1.0 - p) /
           std::pow(std::sin(kPi * u / length), p);
}

double d_plus_rhs(int n_vertices, double side, int m, double p) {
    return n_vertices * std::pow(side, p) *
           std::pow(std::sin(kPi * m / n_vertices), p) /
           std::pow(std::sin(kPi / n_vertices), p);
}

double d_minus_rhs(int n_vertices, double side, int m, double p) {
    return n_vertices * std::pow(std::sin(kPi / n_vertices), p) /
           (std::pow(side, p) * std::pow(std::sin(kPi * m / n_vertices), p));
}

double default_tolerance(const geometry::ArcLengthCurve& curve) {
    return curve.has_corners() ? 1e-6 : 1e-8;
}

ChordMoment chord_moment(const geometry::ArcLengthCurve& curve, double u, double p) {
    if (p == 0.0) throw std::invalid_argument("chord moment exponent must be nonzero");
    const int k = aligned_offset(curve, u);
    const int n = curve.grid_size();
    const double h = curve.grid_step();

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c = curve.chord(i, k);
        if (c == 0.0 && p < 0.0)
            throw singular_chord_error("vanishing chord with negative exponent");
        sum += std::pow(c, p);
    }
    return {u, p, h * sum};
}

InequalityReport check_continuous(const geometry::ArcLengthCurve& curve, double u,
                                  double p, Sign sign, double rel_tol) {
    if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
    if (rel_tol < 0.0) rel_tol = default_tolerance(curve);
    const double L = curve.length();
    if (sign == Sign::Plus) {
        const double rhs = c_plus_rhs(L, u, p);
        const double lhs = chord_moment(curve, u, p).value;
        return make_report(Family::CPlus, u, p, lhs, rhs, rel_tol * std::abs(rhs));
    }
    const double rhs = c_minus_rhs(L, u, p);
    const double lhs = chord_moment(curve, u, -p).value;
    return make_report(Family::CMinus, u, p, lhs, rhs, rel_tol * std::abs(rhs));
}

InequalityReport check_discrete(const geometry::Polygon& polygon, int m, double p,
                                Sign sign, double rel_tol) {
    if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
    const int n = polygon.size();
    if (m < 1 || m > n / 2)
        throw std::invalid_argument("vertex offset m must lie in [1, N/2]");

    const double expo = sign == Sign::Plus ? p : -p;
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c = polygon.chord(i, m);
        if (c == 0.0 && expo < 0.0)
            throw singular_chord_error("vanishing polygon chord with negative exponent");
        lhs += std::pow(c, expo);
    }
    const double rhs = sign == Sign::Plus
                           ? d_plus_rhs(n, polygon.side_length(), m, p)
                           : d_minus_rhs(n, polygon.side_length(), m, p);
    return make_report(sign == Sign::Plus ? Family::DPlus : Family::DMinus, m, p,
                       lhs, rhs, rel_tol * std::abs(rhs));
}

double lens_c2_closed_form(double R, double length, double u) {
    if (!(R > length / (4.0 * kPi)))
        throw std::invalid_argument("lens closed form requires R > L / (4 pi)");
    if (!(u > 0.0) || u > 0.5 * length * (1.0 + 1e-12))
        throw std::invalid_argument("u must lie in (0, L/2]");
    const double w = u / (2.0 * R);
    return 8.0 * R * R * R *
           (0.5 * length / R * std::sin(w) * std::sin(w) +
            4.0 * (w * std::cos(w) - std::sin(w)) * std::cos(length / (4.0 * R)) *
                std::cos((length - 2.0 * u) / (4.0 * R)));
}

namespace {

ImplicationAudit audit_from_reports(InequalityReport plus_p,
                                    InequalityReport plus_pprime,
                                    InequalityReport minus_p,
                                    InequalityReport minus_pprime) {
    ImplicationAudit audit{plus_p, plus_pprime, minus_p, minus_pprime, true};
    // p => p', p => -p, p' => -p'. A violated strong claim implies nothing.
    if (not_violated(plus_p) && !not_violated(plus_pprime)) audit.consistent = false;
    if (not_violated(plus_p) && !not_violated(minus_p)) audit.consistent = false;
    if (not_violated(plus_pprime) && !not_violated(minus_pprime))
        audit.consistent = false;
    return audit;
}

} // namespace

ImplicationAudit implication_audit(const geometry::ArcLengthCurve& curve, double u,
                                   double p, double p_prime, double rel_tol) {
    if (!(p > p_prime) || !(p_prime > 0.0))
        throw std::invalid_argument("implication audit requires p > p' > 0");
    return audit_from_reports(check_continuous(curve, u, p, Sign::Plus, rel_tol),
                              check_continuous(curve, u, p_prime, Sign::Plus, rel_tol),
                              check_continuous(curve, u, p, Sign::Minus, rel_tol),
                              check_continuous(curve, u, p_prime, Sign::Minus, rel_tol));
}

ImplicationAudit implication_audit(const geometry::Polygon& polygon, int m, double p,
                                   double p_prime, double rel_tol) {
    if (!(p > p_prime) || !(p_prime > 0.0))
        throw std::invalid_argument("implication audit requires p > p' > 0");
    return audit_from_reports(check_discrete(polygon, m, p, Sign::Plus, rel_tol),
                              check_discrete(polygon, m, p_prime, Sign::Plus, rel_tol),
                              check_discrete(polygon, m, p, Sign::Minus, rel_tol),
                              check_discrete(polygon, m, p_prime, Sign::Minus, rel_tol));
}

JensenChainAudit jensen_chain_audit(const geometry::ArcLengthCurve& curve,
                                    double kappa, double tol) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!curve.is_closed(1e-6))
        throw std::invalid_argument("jensen_chain_audit requires a closed curve");

    const int n = curve.grid_size();
    const int half = n / 2;
    const double L = curve.length();
    const double h = curve.grid_step();

    // Inner integrands at each grid separation u_k = k h. Both vanish in the
    // u -> 0 limit: the kernel difference cancels its own log singularity.
    double f_kappa = 0.0;
    double bound = 0.0;
    bool c1_all = true;
    for (int k = 1; k <= half; ++k) {
        const double u = k * h;
        const double circle_val = specfun::bessel_k0(kappa * circle_chord(L, u));

        double inner = 0.0;
        double mean_chord = 0.0;
        for (int i = 0; i < n; ++i) {
            const double c = curve.chord(i, k);
            inner += specfun::bessel_k0(kappa * c) - circle_val;
            mean_chord += c;
        }
        inner *= h;
        mean_chord *= h;

        const double weight = (k == half) ? 0.5 * h : h;
        f_kappa += weight * inner;
        bound += weight * (specfun::bessel_k0(kappa * mean_chord / L) - circle_val);

        if (mean_chord > c_plus_rhs(L, u, 1.0) * (1.0 + 1e-8)) c1_all = false;
    }

    JensenChainAudit audit;
    audit.kappa = kappa;
    audit.f_kappa = f_kappa;
    audit.jensen_bound = bound;
    audit.tolerance = tol;
    audit.chain_holds = f_kappa / L >= bound - tol;
    audit.c1_holds_all = c1_all;
    audit.bound_consistent = !c1_all || bound >= -tol;
    return audit;
}

} // namespace leakyloop::chords
