#pragma once

#include <string>

#include "leakyloop/chords.hpp"
#include "leakyloop/geometry.hpp"
#include "leakyloop/spectral.hpp"

namespace leakyloop::io {

// Curve file:
//   {"length": L, "n": N, "points": [[x, y], ...], "closure_defect": d,
//    "source": "circle|curvature|lens|paperclip|file"}
void save_curve(const geometry::ArcLengthCurve& curve, const std::string& path);
geometry::ArcLengthCurve load_curve(const std::string& path);

// Curvature spec file: {"length": L, "modes": [{"n": k, "a": .., "b": ..}]}
void save_spec(const geometry::CurvatureSpec& spec, const std::string& path);
geometry::CurvatureSpec load_spec(const std::string& path);

// Polygon file: {"side": l, "vertices": [[x, y], ...]}
void save_polygon(const geometry::Polygon& polygon, const std::string& path);
geometry::Polygon load_polygon(const std::string& path);

// Ground state file:
//   {"kappa": .., "energy": .., "residual": .., "iterations": ..,
//    "grid": N, "eigenvector": [...]}
void save_ground_state(const spectral::GroundStateResult& result,
                       const std::string& path);
spectral::GroundStateResult load_ground_state(const std::string& path);

// Inequality reports, CSV and JSON-lines flavours; identical field set.
std::string report_csv_header();
std::string report_csv_row(const chords::InequalityReport& report);
std::string report_json_line(const chords::InequalityReport& report);

/// Writes content to a temporary sibling file and renames it into place, so
/// failed runs never leave partial outputs.
void atomic_write(const std::string& path, const std::string& content);

} // namespace leakyloop::io
