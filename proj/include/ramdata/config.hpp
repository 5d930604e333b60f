#pragma once

// Strict JSON ingestion for surfaces, ramification data and cover-family
// problems. Unknown fields are rejected.

#include "ramdata/am_kernel.hpp"
#include "ramdata/ram_enum.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ramdata::config {

using Json = nlohmann::json;
using lattice::SurfaceModel;

/// A surface together with the descriptor it was built from. `family`
/// says which classifier handles it: "rational", "elliptic-split",
/// "elliptic-nonsplit-deg0", "elliptic-deg1" or "generic".
struct Surface {
    SurfaceModel model;
    std::string family;
    Json descriptor;
};

/// Built-in names (p2, quadric, f<e>, elliptic-split, elliptic-nonsplit-deg0,
/// elliptic-deg1) or a path to a surface config file.
Surface resolve_surface(const std::string& selector, std::optional<Int> torsion = std::nullopt);

Surface surface_from_json(const Json& j);

/// {"pairs": [{"class": [..], "index": e}, ...]}
ramification::RamificationDatum datum_from_json(const SurfaceModel& surface, const Json& j);

/// {"level": N, "require_exact_order": bool?, "curves": [{"label"?, "degree", "matrix",
///  "kernel", "dual"?, "index"}, ...]}
kernel::CoverFamilyProblem problem_from_json(const Json& j);

/// "6", "4,8", "4,8:12" (max index 12), "=5" (exact usage).
ramification::SearchBox parse_box(const std::string& text);

std::string read_text_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& what);

} // namespace ramdata::config
