// Command-line surface for the loop-spectrum library: curve/polygon
// generators, the Birman-Schwinger ground-state solver, mean-chord
// inequality scans, perturbation reports, and field maps. Every command is
// a pure function of its flags and input files; outputs are written
// atomically so failed runs leave nothing behind.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leakyloop/chords.hpp"
#include "leakyloop/errors.hpp"
#include "leakyloop/geometry.hpp"
#include "leakyloop/io.hpp"
#include "leakyloop/perturb.hpp"
#include "leakyloop/spectral.hpp"

namespace {

namespace ll = leakyloop;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Random perturbation specs used by the reproducible sweeps: five distinct
// modes drawn from 1..8, coefficients uniform in [-1, 1].
ll::geometry::CurvatureSpec random_spec(std::mt19937& rng, double length) {
    std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<ll::geometry::CurvatureMode> modes;
    for (int i = 0; i < 5; ++i) {
        const double a = coef(rng), b = coef(rng);
        modes.push_back({pool[i], a, b});
    }
    return ll::geometry::CurvatureSpec(length, std::move(modes));
}

// --config FILE: flat JSON whose keys are long option names. Values are
// injected as flags unless the same flag was given explicitly (flags
// override the file).
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (std::next(it) == args.end())
        throw std::runtime_error("--config requires a path");
    const std::string path = *std::next(it);

    std::vector<std::string> out;
    for (auto cur = args.begin(); cur != args.end(); ++cur) {
        if (*cur == "--config") {
            ++cur;  // skip the path too
            continue;
        }
        out.push_back(*cur);
    }

    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    nlohmann::json j;
    in >> j;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        if (std::find(out.begin(), out.end(), flag) != out.end()) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back(flag);
            continue;
        }
        out.push_back(flag);
        if (value.is_string())
            out.push_back(value.get<std::string>());
        else
            out.push_back(value.dump());
    }
    return out;
}

// Curves are scanned on grid-aligned separations; bring the grid to a
// multiple of 2 * u_count first so the u grid lands on samples. Open curves
// cannot be resampled (trigonometric interpolation assumes closure), so
// their u values are snapped to the existing grid instead.
ll::geometry::ArcLengthCurve scan_ready(const ll::geometry::ArcLengthCurve& curve,
                                        int u_count) {
    const int base = 2 * u_count;
    const int n = curve.grid_size();
    if (n % base == 0 || !curve.is_closed(1e-6)) return curve;
    const int target = base * ((n + base - 1) / base);
    return ll::geometry::resample(curve, std::max(target, base * 8));
}

double snap_to_grid(const ll::geometry::ArcLengthCurve& curve, double u) {
    const double h = curve.grid_step();
    const double snapped = std::round(u / h) * h;
    return std::clamp(snapped, h, 0.5 * curve.length());
}

struct ScanResult {
    std::vector<ll::chords::InequalityReport> reports;
    bool any_violation = false;
};

void append_report(ScanResult& scan, ll::chords::InequalityReport report) {
    scan.any_violation |= report.verdict == ll::chords::Verdict::Violated;
    scan.reports.push_back(std::move(report));
}

std::string render_reports(const ScanResult& scan, const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        for (const auto& r : scan.reports) out << ll::io::report_json_line(r) << '\n';
    } else {
        out << ll::io::report_csv_header() << '\n';
        for (const auto& r : scan.reports) out << ll::io::report_csv_row(r) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------

int cmd_make_curve(const std::string& kind, double length, int grid, double radius,
                   double ratio, double pa, double pb, double pr,
                   const std::string& spec_path, bool close,
                   const std::string& spec_out, const std::string& out) {
    ll::geometry::ArcLengthCurve curve = [&] {
        if (kind == "circle") return ll::geometry::build_circle(length, grid);
        if (kind == "lens") return ll::geometry::build_lens(radius, length, grid);
        if (kind == "ellipse") return ll::geometry::build_ellipse(ratio, length, grid);
        if (kind == "paperclip") return ll::geometry::build_paperclip(pa, pb, pr, grid);
        if (kind == "curvature") {
            auto spec = ll::io::load_spec(spec_path);
            auto built = ll::geometry::build_from_curvature(spec, grid);
            if (close) {
                auto [closed, adjusted] = ll::geometry::close_curve(built, spec);
                if (!spec_out.empty()) ll::io::save_spec(adjusted, spec_out);
                return closed;
            }
            return built;
        }
        throw std::runtime_error("unknown curve kind: " + kind);
    }();
    ll::io::save_curve(curve, out);
    std::cout << "wrote " << out << " (N=" << curve.grid_size()
              << ", closure defect " << fmt(curve.closure_defect()) << ")\n";
    return 0;
}

int cmd_make_polygon(const std::string& kind, int n, double side, double phi,
                     const std::string& out) {
    ll::geometry::Polygon poly =
        kind == "rhomboid" ? ll::geometry::rhomboid(phi, side)
                           : ll::geometry::build_regular_polygon(n, side);
    ll::io::save_polygon(poly, out);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_ground_state(const std::string& curve_path, double alpha, int grid,
                     double tol, const std::string& out) {
    auto curve = ll::io::load_curve(curve_path);
    if (grid > 0 && grid != curve.grid_size())
        curve = ll::geometry::resample(curve, grid);
    const auto result = ll::spectral::ground_state(curve, alpha, tol);
    ll::io::save_ground_state(result, out);
    std::cout << "kappa* = " << fmt(result.kappa_star)
              << ", energy = " << fmt(result.energy)
              << ", residual = " << fmt(result.lambda_residual) << "\n";
    return 0;
}

int cmd_chord_scan(const std::string& curve_path, const std::string& polygon_path,
                   std::vector<double> exponents, int u_count, double u_single,
                   int m_single, const std::string& sign, double tol,
                   const std::string& out, const std::string& format) {
    if (exponents.empty()) exponents = {2.0};
    const bool do_plus = sign != "minus";
    const bool do_minus = sign != "plus";

    ScanResult scan;
    if (!curve_path.empty()) {
        auto curve = u_single > 0.0 ? ll::io::load_curve(curve_path)
                                    : scan_ready(ll::io::load_curve(curve_path), u_count);
        const double L = curve.length();
        std::vector<double> separations;
        if (u_single > 0.0) {
            separations = {snap_to_grid(curve, u_single)};
        } else {
            for (int j = 1; j <= u_count; ++j)
                separations.push_back(snap_to_grid(curve, 0.5 * L * j / u_count));
        }
        for (double p : exponents) {
            for (double u : separations) {
                if (do_plus)
                    append_report(scan, ll::chords::check_continuous(
                                            curve, u, p, ll::chords::Sign::Plus, tol));
                if (do_minus)
                    append_report(scan, ll::chords::check_continuous(
                                            curve, u, p, ll::chords::Sign::Minus, tol));
            }
        }
    } else if (!polygon_path.empty()) {
        const auto poly = ll::io::load_polygon(polygon_path);
        const double ptol = tol > 0.0 ? tol : 1e-12;
        std::vector<int> offsets;
        if (m_single > 0) {
            offsets = {m_single};
        } else {
            for (int m = 1; m <= poly.size() / 2; ++m) offsets.push_back(m);
        }
        for (double p : exponents) {
            for (int m : offsets) {
                if (do_plus)
                    append_report(scan, ll::chords::check_discrete(
                                            poly, m, p, ll::chords::Sign::Plus, ptol));
                if (do_minus)
                    append_report(scan, ll::chords::check_discrete(
                                            poly, m, p, ll::chords::Sign::Minus, ptol));
            }
        }
    } else {
        throw std::runtime_error("chord-scan needs --curve or --polygon");
    }

    ll::io::atomic_write(out, render_reports(scan, format));
    std::cout << scan.reports.size() << " reports, "
              << (scan.any_violation ? "violations found" : "no violations") << "\n";
    return scan.any_violation ? 3 : 0;
}

int cmd_perturb(const std::string& spec_path, int random_specs, unsigned seed,
                double u, double eps0, const std::string& out) {
    std::vector<ll::geometry::CurvatureSpec> specs;
    if (!spec_path.empty()) {
        specs.push_back(ll::io::load_spec(spec_path));
    } else {
        std::mt19937 rng(seed);
        for (int i = 0; i < random_specs; ++i) specs.push_back(random_spec(rng, kTwoPi));
    }
    if (specs.empty()) throw std::runtime_error("perturb needs --spec or --random-specs");

    std::ostringstream csv;
    csv << "n,a,b,weight,F,contribution\n";
    bool all_consistent = true;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        const double ueff = u > 0.0 ? u : 0.5 * spec.length();
        const auto ig = ll::perturb::i_g(spec, ueff);
        for (const auto& mode : ig.per_mode)
            csv << mode.n << ',' << fmt(mode.a) << ',' << fmt(mode.b) << ','
                << fmt(mode.weight) << ',' << fmt(mode.f_value) << ','
                << fmt(mode.contribution) << '\n';
        const auto audit = ll::perturb::second_order_expansion_audit(spec, ueff, eps0);
        all_consistent &= audit.cubic_order;
        std::cout << "spec " << i << ": I_g(" << fmt(ueff) << ") = " << fmt(ig.total)
                  << ", audit " << (audit.cubic_order ? "consistent" : "inconsistent")
                  << " (ratio " << fmt(audit.ratio) << ")\n";
    }
    ll::io::atomic_write(out, csv.str());
    return all_consistent ? 0 : 3;
}

int cmd_field_map(const std::string& result_path, const std::string& curve_path,
                  int nx, int ny, double extent, const std::string& out) {
    const auto result = ll::io::load_ground_state(result_path);
    const auto curve = ll::io::load_curve(curve_path);

    std::ostringstream csv;
    csv << "x,y,psi\n";
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double x = nx > 1 ? -extent + 2.0 * extent * ix / (nx - 1) : 0.0;
            const double y = ny > 1 ? -extent + 2.0 * extent * iy / (ny - 1) : 0.0;
            double psi;
            try {
                psi = ll::spectral::eigenfunction_at(result, curve, {x, y});
            } catch (const ll::point_on_support_error&) {
                psi = std::numeric_limits<double>::quiet_NaN();
            }
            csv << fmt(x) << ',' << fmt(y) << ',' << fmt(psi) << '\n';
        }
    }
    ll::io::atomic_write(out, csv.str());
    std::cout << "wrote " << out << " (" << nx << "x" << ny << ")\n";
    return 0;
}

int cmd_lens_table(double length, int grid, std::vector<double> radii, int u_count,
                   const std::string& out) {
    if (radii.empty())
        radii = {length / std::numbers::pi, length / (2.5 * std::numbers::pi),
                 length / (3.5 * std::numbers::pi), 1000.0 * length};

    std::ostringstream csv;
    csv << "R,u,c2_chord,c2_closed,circle_value\n";
    for (double R : radii) {
        const auto lens = ll::geometry::build_lens(R, length, grid);
        const double h = lens.grid_step();
        for (int j = 1; j <= u_count; ++j) {
            double u = 0.5 * length * j / u_count;
            u = std::round(u / h) * h;
            const double chord = ll::chords::chord_moment(lens, u, 2.0).value;
            const double closed = ll::chords::lens_c2_closed_form(R, length, u);
            const double circle = ll::chords::c_plus_rhs(length, u, 2.0);
            csv << fmt(R) << ',' << fmt(u) << ',' << fmt(chord) << ',' << fmt(closed)
                << ',' << fmt(circle) << '\n';
        }
    }
    ll::io::atomic_write(out, csv.str());
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_paperclip_probe(double a, double b_min, double b_max, int b_count,
                        double r_min, double r_max, int r_count, int grid,
                        const std::string& out) {
    std::ostringstream csv;
    csv << "a,b,r,length,c2_half,ratio_to_L3\n";
    double best_ratio = 0.0, best_b = 0.0, best_r = 0.0;
    for (int ib = 0; ib < b_count; ++ib) {
        const double tb = b_count > 1 ? static_cast<double>(ib) / (b_count - 1) : 0.0;
        const double b = b_min * std::pow(b_max / b_min, tb);
        for (int ir = 0; ir < r_count; ++ir) {
            const double tr = r_count > 1 ? static_cast<double>(ir) / (r_count - 1) : 0.0;
            const double r = r_min * std::pow(r_max / r_min, tr);
            const auto clip = ll::geometry::build_paperclip(a, b, r, grid);
            const double L = clip.length();
            const double c2 = ll::chords::chord_moment(clip, 0.5 * L, 2.0).value;
            const double ratio = c2 / (L * L * L);
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_b = b;
                best_r = r;
            }
            csv << fmt(a) << ',' << fmt(b) << ',' << fmt(r) << ',' << fmt(L) << ','
                << fmt(c2) << ',' << fmt(ratio) << '\n';
        }
    }
    ll::io::atomic_write(out, csv.str());
    const double threshold = 1.0 / (std::numbers::pi * std::numbers::pi);
    std::cout << "max c2(L/2)/L^3 = " << fmt(best_ratio) << " at b = " << fmt(best_b)
              << ", r = " << fmt(best_r) << "; 1/pi^2 = " << fmt(threshold) << "; "
              << (best_ratio > threshold ? "exceeded" : "not exceeded") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground states of attractive delta-interactions on planar loops "
                 "and the mean-chord inequality family"};
    app.require_subcommand(1);

    // make-curve
    std::string mc_kind, mc_spec, mc_spec_out, mc_out;
    double mc_length = kTwoPi, mc_radius = 1.0, mc_ratio = 2.0;
    double mc_a = 1.0, mc_b = 0.1, mc_r = 0.01;
    int mc_grid = 512;
    bool mc_close = false;
    auto* make_curve = app.add_subcommand("make-curve", "generate a curve file");
    make_curve->add_option("--kind", mc_kind, "circle|curvature|lens|paperclip|ellipse")
        ->required();
    make_curve->add_option("--length", mc_length, "total arc length");
    make_curve->add_option("--grid", mc_grid, "sample count (even, >= 16)");
    make_curve->add_option("--radius", mc_radius, "lens arc radius");
    make_curve->add_option("--ratio", mc_ratio, "ellipse axis ratio");
    make_curve->add_option("--a", mc_a, "paperclip first segment");
    make_curve->add_option("--b", mc_b, "paperclip second segment");
    make_curve->add_option("--r", mc_r, "paperclip turn radius");
    make_curve->add_option("--spec", mc_spec, "curvature spec file");
    make_curve->add_flag("--close", mc_close, "project the spec onto closed curves");
    make_curve->add_option("--spec-out", mc_spec_out, "write the adjusted spec here");
    make_curve->add_option("--out", mc_out, "output curve file")->required();

    // make-polygon
    std::string mp_kind = "regular", mp_out;
    int mp_n = 6;
    double mp_side = 1.0, mp_phi = std::numbers::pi / 3.0;
    auto* make_polygon = app.add_subcommand("make-polygon", "generate a polygon file");
    make_polygon->add_option("--kind", mp_kind, "regular|rhomboid");
    make_polygon->add_option("--n", mp_n, "vertex count (regular)");
    make_polygon->add_option("--side", mp_side, "side length");
    make_polygon->add_option("--phi", mp_phi, "rhomboid half-angle");
    make_polygon->add_option("--out", mp_out, "output polygon file")->required();

    // ground-state
    std::string gs_curve, gs_out;
    double gs_alpha = 1.0, gs_tol = 1e-8;
    int gs_grid = 0;
    auto* ground = app.add_subcommand("ground-state",
                                      "solve for the lowest eigenvalue on a loop");
    ground->add_option("--curve", gs_curve, "curve file")->required();
    ground->add_option("--alpha", gs_alpha, "coupling strength");
    ground->add_option("--grid", gs_grid, "resample to this grid before solving");
    ground->add_option("--tol", gs_tol, "bisection tolerance on kappa");
    ground->add_option("--out", gs_out, "output result file")->required();

    // chord-scan
    std::string cs_curve, cs_polygon, cs_sign = "both", cs_out, cs_format = "csv";
    std::vector<double> cs_p;
    int cs_ucount = 20, cs_m = 0;
    double cs_tol = -1.0, cs_u = -1.0;
    auto* scan = app.add_subcommand("chord-scan",
                                    "scan the mean-chord inequality family");
    scan->add_option("--curve", cs_curve, "curve file");
    scan->add_option("--polygon", cs_polygon, "polygon file");
    scan->add_option("--p", cs_p, "exponents (repeatable)");
    scan->add_option("--u", cs_u, "single arc separation instead of the u grid");
    scan->add_option("--m", cs_m, "single vertex offset instead of all of 1..N/2");
    scan->add_option("--u-count", cs_ucount, "number of u grid points");
    scan->add_option("--sign", cs_sign, "plus|minus|both");
    scan->add_option("--tol", cs_tol, "relative equality tolerance");
    scan->add_option("--format", cs_format, "csv|json");
    scan->add_option("--out", cs_out, "output report file")->required();

    // perturb
    std::string pt_spec, pt_out;
    int pt_random = 0;
    unsigned pt_seed = 0;
    double pt_u = -1.0, pt_eps0 = 0.02;
    auto* pert = app.add_subcommand("perturb",
                                    "mode contributions and expansion audit");
    pert->add_option("--spec", pt_spec, "curvature spec file");
    pert->add_option("--random-specs", pt_random, "audit this many seeded random specs");
    pert->add_option("--seed", pt_seed, "random seed");
    pert->add_option("--u", pt_u, "arc separation (default L/2)");
    pert->add_option("--eps0", pt_eps0, "audit base amplitude");
    pert->add_option("--out", pt_out, "output mode-table CSV")->required();

    // field-map
    std::string fm_result, fm_curve, fm_out;
    int fm_nx = 41, fm_ny = 41;
    double fm_extent = 3.0;
    auto* field = app.add_subcommand("field-map",
                                     "sample the planar eigenfunction on a grid");
    field->add_option("--result", fm_result, "ground-state result file")->required();
    field->add_option("--curve", fm_curve, "curve file")->required();
    field->add_option("--nx", fm_nx, "grid points in x");
    field->add_option("--ny", fm_ny, "grid points in y");
    field->add_option("--extent", fm_extent, "half-width of the sampling square");
    field->add_option("--out", fm_out, "output CSV")->required();

    // lens-table
    std::string lt_out;
    double lt_length = kTwoPi;
    int lt_grid = 8000, lt_ucount = 10;
    std::vector<double> lt_radii;
    auto* lens = app.add_subcommand("lens-table",
                                    "two-arc family chord moments vs closed form");
    lens->add_option("--length", lt_length, "total arc length");
    lens->add_option("--grid", lt_grid, "samples per lens");
    lens->add_option("--radii", lt_radii, "arc radii (repeatable)");
    lens->add_option("--u-count", lt_ucount, "u grid points");
    lens->add_option("--out", lt_out, "output CSV")->required();

    // paperclip-probe
    std::string pp_out;
    double pp_a = 1.0, pp_bmin = 0.01, pp_bmax = 0.3, pp_rmin = 0.002, pp_rmax = 0.05;
    int pp_bcount = 8, pp_rcount = 6, pp_grid = 8192;
    auto* probe = app.add_subcommand("paperclip-probe",
                                     "search the open family for chord excess");
    probe->add_option("--a", pp_a, "first segment length");
    probe->add_option("--b-min", pp_bmin, "second segment, grid start");
    probe->add_option("--b-max", pp_bmax, "second segment, grid end");
    probe->add_option("--b-count", pp_bcount, "second segment, grid size");
    probe->add_option("--r-min", pp_rmin, "turn radius, grid start");
    probe->add_option("--r-max", pp_rmax, "turn radius, grid end");
    probe->add_option("--r-count", pp_rcount, "turn radius, grid size");
    probe->add_option("--grid", pp_grid, "samples per curve");
    probe->add_option("--out", pp_out, "output CSV")->required();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config(args);
        // CLI11 consumes arguments in reverse.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (make_curve->parsed())
            return cmd_make_curve(mc_kind, mc_length, mc_grid, mc_radius, mc_ratio,
                                  mc_a, mc_b, mc_r, mc_spec, mc_close, mc_spec_out,
                                  mc_out);
        if (make_polygon->parsed())
            return cmd_make_polygon(mp_kind, mp_n, mp_side, mp_phi, mp_out);
        if (ground->parsed())
            return cmd_ground_state(gs_curve, gs_alpha, gs_grid, gs_tol, gs_out);
        if (scan->parsed())
            return cmd_chord_scan(cs_curve, cs_polygon, cs_p, cs_ucount, cs_u, cs_m,
                                  cs_sign, cs_tol, cs_out, cs_format);
        if (pert->parsed())
            return cmd_perturb(pt_spec, pt_random, pt_seed, pt_u, pt_eps0, pt_out);
        if (field->parsed())
            return cmd_field_map(fm_result, fm_curve, fm_nx, fm_ny, fm_extent, fm_out);
        if (lens->parsed())
            return cmd_lens_table(lt_length, lt_grid, lt_radii, lt_ucount, lt_out);
        if (probe->parsed())
            return cmd_paperclip_probe(pp_a, pp_bmin, pp_bmax, pp_bcount, pp_rmin,
                                       pp_rmax, pp_rcount, pp_grid, pp_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ll::no_bound_state_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
