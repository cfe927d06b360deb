#include "leakyloop/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace leakyloop::io {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string wire_source(const std::string& source) {
    if (source == "circle" || source == "curvature" || source == "lens" ||
        source == "paperclip")
        return source;
    return "file";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void save_curve(const geometry::ArcLengthCurve& curve, const std::string& path) {
    json j;
    j["length"] = curve.length();
    j["n"] = curve.grid_size();
    json pts = json::array();
    for (const auto& p : curve.points()) pts.push_back({p.x, p.y});
    j["points"] = std::move(pts);
    j["closure_defect"] = curve.closure_defect();
    j["source"] = wire_source(curve.source());
    atomic_write(path, j.dump(2) + "\n");
}

geometry::ArcLengthCurve load_curve(const std::string& path) {
    const json j = parse_file(path);
    const double length = j.at("length").get<double>();
    const int n = j.at("n").get<int>();
    std::vector<Vec2> pts;
    pts.reserve(j.at("points").size());
    for (const auto& p : j.at("points"))
        pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (static_cast<int>(pts.size()) != n)
        throw std::runtime_error("curve file " + path + ": point count != n");
    const double defect = j.at("closure_defect").get<double>();
    const std::string source = j.value("source", "file");
    std::vector<double> corners;
    if (source == "lens") corners = {0.0, 0.5 * length};
    return geometry::ArcLengthCurve(length, std::move(pts), defect, 0.0, source,
                                    std::move(corners));
}

void save_spec(const geometry::CurvatureSpec& spec, const std::string& path) {
    json j;
    j["length"] = spec.length();
    json modes = json::array();
    for (const auto& m : spec.modes())
        modes.push_back({{"n", m.n}, {"a", m.a}, {"b", m.b}});
    j["modes"] = std::move(modes);
    atomic_write(path, j.dump(2) + "\n");
}

geometry::CurvatureSpec load_spec(const std::string& path) {
    const json j = parse_file(path);
    std::vector<geometry::CurvatureMode> modes;
    for (const auto& m : j.at("modes"))
        modes.push_back({m.at("n").get<int>(), m.at("a").get<double>(),
                         m.at("b").get<double>()});
    return geometry::CurvatureSpec(j.at("length").get<double>(), std::move(modes));
}

void save_polygon(const geometry::Polygon& polygon, const std::string& path) {
    json j;
    j["side"] = polygon.side_length();
    json verts = json::array();
    for (const auto& v : polygon.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
    atomic_write(path, j.dump(2) + "\n");
}

geometry::Polygon load_polygon(const std::string& path) {
    const json j = parse_file(path);
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices"))
        verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return geometry::Polygon(std::move(verts), j.at("side").get<double>());
}

void save_ground_state(const spectral::GroundStateResult& result,
                       const std::string& path) {
    json j;
    j["kappa"] = result.kappa_star;
    j["energy"] = result.energy;
    j["residual"] = result.lambda_residual;
    j["iterations"] = result.bisection_iterations;
    j["grid"] = result.grid_size;
    j["eigenvector"] = result.eigenvector;
    atomic_write(path, j.dump(2) + "\n");
}

spectral::GroundStateResult load_ground_state(const std::string& path) {
    const json j = parse_file(path);
    spectral::GroundStateResult r;
    r.kappa_star = j.at("kappa").get<double>();
    r.energy = j.at("energy").get<double>();
    r.lambda_residual = j.at("residual").get<double>();
    r.bisection_iterations = j.at("iterations").get<int>();
    r.grid_size = j.at("grid").get<int>();
    r.eigenvector = j.at("eigenvector").get<std::vector<double>>();
    return r;
}

std::string report_csv_header() { return "family,u_or_m,p,lhs,rhs,margin,verdict"; }

std::string report_csv_row(const chords::InequalityReport& r) {
    std::ostringstream out;
    out << chords::family_name(r.family) << ',' << format_double(r.u_or_m) << ','
        << format_double(r.p) << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.margin) << ','
        << chords::verdict_name(r.verdict);
    return out.str();
}

std::string report_json_line(const chords::InequalityReport& r) {
    json j;
    j["family"] = chords::family_name(r.family);
    j["u_or_m"] = r.u_or_m;
    j["p"] = r.p;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["verdict"] = chords::verdict_name(r.verdict);
    return j.dump();
}

} // namespace leakyloop::io
