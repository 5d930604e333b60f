#pragma once

// Golden-table regression: stored expected classification lists for the
// built-in surfaces, diffed against fresh runs.

#include "ramdata/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ramdata::golden {

struct ExpectedRow {
    std::string vector;
    std::string label;
    std::string tag;
};

/// A vector that must be enumerated, excluded, and flagged by the named
/// filters.
struct ExpectedExclusion {
    std::string vector;
    std::vector<std::string> filters;
};

struct GoldenCase {
    std::string name;
    std::string description;
    report::ClassifyRequest request;
    std::string outcome;
    std::vector<ExpectedRow> surviving;
    std::vector<ExpectedExclusion> excluded;
    std::string path;
};

GoldenCase case_from_json(const config::Json& j);
GoldenCase load_case(const std::string& path);
/// Every *.json file in `dir`, sorted by file name.
std::vector<GoldenCase> load_dir(const std::string& dir);

std::string default_dir();

/// Structured diff lines; empty when the report matches.
std::vector<std::string> compare(const GoldenCase& expected, const report::ClassificationReport& actual);

struct Summary {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> lines;
    /// Name and diff of the first divergent case.
    std::optional<std::pair<std::string, std::vector<std::string>>> first_divergence;

    bool ok() const { return failed == 0; }
};

Summary run_golden(const std::string& dir);

/// Copies descriptive tags from the golden case with the same request.
void attach_tags(report::ClassificationReport& report, const report::ClassifyRequest& request, const std::string& dir);

} // namespace ramdata::golden
