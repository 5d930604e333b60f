#include "ramdata/golden.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#ifndef RAMDATA_GOLDEN_DIR
#define RAMDATA_GOLDEN_DIR "data/golden"
#endif

namespace ramdata::golden {

using config::Json;

namespace {

void require_keys(const Json& j, const std::string& what, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw InvalidInput(what + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw InvalidInput(what + ": unknown field \"" + it.key() + "\"");
}

std::string str(const Json& j, const char* key, const std::string& what, bool required = true) {
    if (!j.contains(key)) {
        if (required) throw InvalidInput(what + ": missing field \"" + key + "\"");
        return {};
    }
    if (!j.at(key).is_string()) throw InvalidInput(what + ": \"" + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

bool same_request(const report::ClassifyRequest& a, const report::ClassifyRequest& b) {
    return a.surface == b.surface && a.torsion == b.torsion && a.mode == b.mode && a.ruling == b.ruling &&
           a.box == b.box;
}

} // namespace

GoldenCase case_from_json(const Json& j) {
    const std::string what = "golden case";
    require_keys(j, what, {"case", "description", "request", "outcome", "surviving", "excluded"});
    GoldenCase c;
    c.name = str(j, "case", what);
    c.description = str(j, "description", what, false);
    c.outcome = str(j, "outcome", what);
    if (c.outcome != "nonempty" && c.outcome != "EMPTY") throw InvalidInput(what + ": outcome must be nonempty|EMPTY");

    if (!j.contains("request")) throw InvalidInput(what + ": missing field \"request\"");
    const Json& rq = j.at("request");
    require_keys(rq, what + " request", {"surface", "mode", "torsion", "ruling", "box"});
    c.request.surface = str(rq, "surface", what);
    if (rq.contains("mode")) c.request.mode = str(rq, "mode", what);
    if (rq.contains("torsion")) {
        if (!rq.at("torsion").is_number_integer()) throw InvalidInput(what + ": torsion must be an integer");
        c.request.torsion = rq.at("torsion").get<Int>();
    }
    if (rq.contains("ruling")) c.request.ruling = str(rq, "ruling", what);
    if (rq.contains("box")) c.request.box = str(rq, "box", what);

    if (!j.contains("surviving") || !j.at("surviving").is_array())
        throw InvalidInput(what + ": missing array \"surviving\"");
    for (const auto& r : j.at("surviving")) {
        require_keys(r, what + " row", {"vector", "label", "tag"});
        c.surviving.push_back({str(r, "vector", what), str(r, "label", what, false), str(r, "tag", what, false)});
    }
    if (j.contains("excluded")) {
        if (!j.at("excluded").is_array()) throw InvalidInput(what + ": \"excluded\" must be an array");
        for (const auto& r : j.at("excluded")) {
            require_keys(r, what + " exclusion", {"vector", "filters"});
            ExpectedExclusion x;
            x.vector = str(r, "vector", what);
            if (!r.contains("filters") || !r.at("filters").is_array())
                throw InvalidInput(what + ": exclusion needs a \"filters\" array");
            for (const auto& f : r.at("filters")) {
                if (!f.is_string()) throw InvalidInput(what + ": filter names must be strings");
                x.filters.push_back(f.get<std::string>());
            }
            c.excluded.push_back(std::move(x));
        }
    }
    return c;
}

GoldenCase load_case(const std::string& path) {
    GoldenCase c = case_from_json(config::parse_json(config::read_text_file(path), path));
    c.path = path;
    return c;
}

std::vector<GoldenCase> load_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw InvalidInput("golden directory " + dir + " not found");
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<GoldenCase> out;
    for (const auto& f : files) out.push_back(load_case(f));
    return out;
}

std::string default_dir() {
    if (const char* env = std::getenv("RAMDATA_GOLDEN_DIR"); env && *env) return env;
    return RAMDATA_GOLDEN_DIR;
}

namespace {

std::string row_key(const std::string& vector, const std::string& label) {
    return label.empty() ? vector : vector + " [" + label + "]";
}

// "node_divisibility fails on 4 of 15 data; artin_genus fails on 11 of 15 data"
std::string failure_profile(const report::ReportRow& row) {
    std::map<std::string, int> counts;
    for (const auto& d : row.data)
        for (const auto& v : d.verdicts)
            if (v.failed()) ++counts[v.filter_name];
    if (counts.empty()) return "no failing filter";
    std::string s;
    for (const auto& [name, n] : counts) {
        if (!s.empty()) s += "; ";
        s += name + " fails on " + std::to_string(n) + " of " + std::to_string(row.data.size()) + " data";
    }
    return s;
}

} // namespace

std::vector<std::string> compare(const GoldenCase& expected, const report::ClassificationReport& actual) {
    std::vector<std::string> diff;
    if (expected.outcome != actual.outcome)
        diff.push_back("outcome: expected " + expected.outcome + ", got " + actual.outcome);

    std::multiset<std::string> want, got;
    for (const auto& r : expected.surviving) want.insert(row_key(r.vector, r.label));
    for (const auto& r : actual.rows)
        if (r.survives) got.insert(row_key(r.vector, r.label));

    for (const auto& r : expected.surviving) {
        const std::string key = row_key(r.vector, r.label);
        if (got.count(key)) continue;
        auto it = std::find_if(actual.rows.begin(), actual.rows.end(), [&](const report::ReportRow& row) {
            return row.vector == r.vector && (r.label.empty() || row.label == r.label);
        });
        if (it == actual.rows.end())
            diff.push_back("- " + key + ": expected survivor, not enumerated");
        else
            diff.push_back("- " + key + ": expected survivor, excluded (" + failure_profile(*it) + ")");
    }
    for (const auto& key : got)
        if (!want.count(key)) diff.push_back("+ " + key + ": survives but is not in the expected list");

    for (const auto& x : expected.excluded) {
        auto it = std::find_if(actual.rows.begin(), actual.rows.end(),
                               [&](const report::ReportRow& row) { return row.vector == x.vector; });
        if (it == actual.rows.end()) {
            diff.push_back("! " + x.vector + ": expected as a flagged candidate, not enumerated");
            continue;
        }
        if (it->survives) diff.push_back("! " + x.vector + ": expected excluded, survives");
        for (const auto& f : x.filters) {
            bool flagged = std::any_of(it->data.begin(), it->data.end(), [&](const report::DatumEntry& d) {
                return std::any_of(d.verdicts.begin(), d.verdicts.end(),
                                   [&](const auto& v) { return v.failed() && v.filter_name == f; });
            });
            if (!flagged) diff.push_back("! " + x.vector + ": expected to be flagged by " + f + " (" + failure_profile(*it) + ")");
        }
    }
    return diff;
}

Summary run_golden(const std::string& dir) {
    Summary s;
    for (const auto& c : load_dir(dir)) {
        auto report = report::run_classify(c.request);
        auto diff = compare(c, report);
        if (diff.empty()) {
            ++s.passed;
            s.lines.push_back("PASS " + c.name);
        } else {
            ++s.failed;
            s.lines.push_back("FAIL " + c.name);
            for (const auto& d : diff) s.lines.push_back("  " + d);
            if (!s.first_divergence) s.first_divergence = {c.name, diff};
        }
    }
    return s;
}

void attach_tags(report::ClassificationReport& report, const report::ClassifyRequest& request, const std::string& dir) {
    std::vector<GoldenCase> cases;
    try {
        cases = load_dir(dir);
    } catch (const InvalidInput&) {
        return;
    }
    for (const auto& c : cases) {
        if (!same_request(c.request, request)) continue;
        for (auto& row : report.rows)
            for (const auto& e : c.surviving)
                if (e.vector == row.vector && e.label == row.label) row.tag = e.tag;
        return;
    }
}

} // namespace ramdata::golden
