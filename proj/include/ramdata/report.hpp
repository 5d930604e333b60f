#pragma once

// Classification reports: assembly from the engines, JSON/markdown
// emission, and JSON parsing for round trips and golden comparison.

#include "ramdata/am_kernel.hpp"
#include "ramdata/config.hpp"
#include "ramdata/ram_enum.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ramdata::report {

using config::Json;
using ramification::FilterVerdict;

inline constexpr int schema_version = 1;

std::string_view engine_version();

struct PairEntry {
    std::vector<Int> cls;
    std::string text;
    Int index = 2;

    friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

struct Witness {
    bool solvable = false;
    Int level = 1;
    std::vector<kernel::Element> xi;
    std::vector<std::string> transcript;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct DatumEntry {
    std::vector<PairEntry> pairs;
    /// Polarization label -> ramification vector, e.g. {"A": "(2,4,4)"}.
    std::map<std::string, std::string> vectors;
    std::vector<FilterVerdict> verdicts;
    bool survives = false;
    std::optional<Witness> witness;

    friend bool operator==(const DatumEntry&, const DatumEntry&) = default;
};

struct ReportRow {
    std::string vector;
    /// Distinguishes rows sharing a vector (the degree-one cases).
    std::string label;
    /// Descriptive citation label, filled from golden data.
    std::string tag;
    /// Some datum survives every filter (and, over an elliptic base, the
    /// curve supply).
    bool survives = false;
    std::vector<DatumEntry> data;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ClassificationReport {
    int schema = schema_version;
    std::string engine;
    std::string input_hash;
    Json surface;
    std::string surface_id;
    std::string polarization;
    std::string mode;
    /// "nonempty" or "EMPTY".
    std::string outcome;
    std::vector<ReportRow> rows;
    std::vector<std::string> transcript;

    std::vector<std::string> surviving_vectors() const;
    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct ClassifyRequest {
    std::string surface;
    std::optional<Int> torsion;
    std::string mode = "terminal";
    std::optional<std::string> ruling;
    std::optional<std::string> box;
    unsigned threads = 0;
};

ClassificationReport run_classify(const ClassifyRequest& request);

/// Every datum that does not survive carries a failing verdict with a
/// reason. Throws InvariantViolation otherwise.
void check_exclusions(const ClassificationReport& report);

Json to_json(const ClassificationReport& report);
ClassificationReport from_json(const Json& j);

std::string emit(const ClassificationReport& report, std::string_view format);
ClassificationReport parse(const std::string& json_text);

} // namespace ramdata::report
