#include "ramdata/report.hpp"

#include "ramdata/elliptic_ruled.hpp"
#include "ramdata/errors.hpp"
#include "ramdata/hash.hpp"

#include <algorithm>
#include <sstream>

#ifndef RAMDATA_VERSION
#define RAMDATA_VERSION "0.0.0"
#endif

namespace ramdata::report {

using lattice::SurfaceModel;
using ramification::RamificationDatum;

std::string_view engine_version() { return RAMDATA_VERSION; }

std::vector<std::string> ClassificationReport::surviving_vectors() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.survives) out.push_back(r.vector);
    return out;
}

namespace {

DatumEntry make_entry(const SurfaceModel& surface, const RamificationDatum& datum,
                      std::vector<FilterVerdict> verdicts) {
    DatumEntry d;
    for (const auto& p : datum.pairs()) d.pairs.push_back({p.cls.coeffs, surface.format(p.cls), p.index});
    for (const auto& [label, h] : surface.rulings())
        d.vectors[label] = ramification::vector_of(surface, datum, h).to_string();
    d.survives = std::none_of(verdicts.begin(), verdicts.end(), [](const FilterVerdict& v) { return v.failed(); });
    d.verdicts = std::move(verdicts);
    return d;
}

Witness make_witness(const kernel::CoverFamilyProblem& problem, const kernel::CoverFamilySolution& s) {
    Witness w;
    w.solvable = s.solvable;
    w.level = problem.level;
    w.xi = s.witness;
    for (std::size_t i = 0; i < problem.curves.size(); ++i) {
        const auto& iso = problem.curves[i].isogeny;
        w.transcript.push_back("curve " + std::to_string(i + 1) + ": isogeny " + iso.label + " of degree " +
                               std::to_string(iso.degree) + ", matrix " + kernel::to_string(iso.matrix) +
                               ", index " + std::to_string(problem.curves[i].index));
    }
    w.transcript.insert(w.transcript.end(), s.transcript.begin(), s.transcript.end());
    return w;
}

std::string box_text(const ramification::SearchBox& box) {
    std::string s = box.exact ? "=" : "";
    for (std::size_t i = 0; i < box.cap.size(); ++i) s += (i ? "," : "") + std::to_string(box.cap[i]);
    if (box.max_index) s += ":" + std::to_string(*box.max_index);
    return s;
}

void supply_transcript(const SurfaceModel& surface, std::vector<std::string>& tr) {
    const auto& supply = *surface.supply();
    tr.push_back("curve supply model (reconstructed, not a theorem): rule " + supply.rule +
                 (supply.torsion ? ", torsion n = " + std::to_string(supply.torsion) : std::string()));
    for (const auto& e : supply.entries)
        tr.push_back("  fibre degree " + std::to_string(e.fiber_degree) + ": " + e.available.to_string());
    for (const auto& n : supply.notes) tr.push_back("  " + n);
}

void add_supply_rows(const SurfaceModel& surface, const std::vector<elliptic::SplitCaseRow>& rows,
                     ClassificationReport& report) {
    for (const auto& row : rows) {
        ReportRow r;
        r.vector = row.vector.to_string();
        r.survives = row.realizable;
        for (const auto& sd : row.data) r.data.push_back(make_entry(surface, sd.datum, sd.verdicts));
        report.rows.push_back(std::move(r));
    }
}

} // namespace

ClassificationReport run_classify(const ClassifyRequest& request) {
    config::Surface surface = config::resolve_surface(request.surface, request.torsion);
    const auto mode = ramification::parse_mode(request.mode);

    ClassificationReport report;
    report.engine = std::string(engine_version());
    report.surface = surface.descriptor;
    report.mode = std::string(ramification::to_string(mode));

    SurfaceModel model = surface.model;
    if (request.ruling) model = model.with_ruling(*request.ruling);
    report.surface_id = model.id();
    report.polarization = model.polarization_label();

    std::optional<ramification::SearchBox> box;
    if (request.box) box = config::parse_box(*request.box);

    Json canonical_input{{"command", "classify"}, {"surface", surface.descriptor}, {"mode", report.mode},
                         {"polarization", report.polarization}};
    if (box) canonical_input["box"] = box_text(*box);
    report.input_hash = hex64(fnv1a64(canonical_input.dump()));

    auto& tr = report.transcript;
    tr.push_back("surface " + model.id() + ", K == " + model.format(model.canonical()) + ", vectors use multiplicity D." +
                 model.format(model.polarization()) + " (" + model.polarization_label() + ")");

    if (surface.family == "rational" || surface.family == "generic") {
        auto candidates = ramification::enumerate_ncy(model, mode, box, request.threads);
        auto used_box = box ? box : ramification::builtin_box(model);
        if (used_box) tr.push_back("search box " + box_text(*used_box));
        std::map<ramification::RamificationVector, ReportRow> grouped;
        std::size_t surviving = 0;
        for (const auto& c : candidates) {
            auto v = ramification::vector_of(model, c.datum, model.polarization());
            auto& row = grouped[v];
            row.vector = v.to_string();
            row.data.push_back(make_entry(model, c.datum, c.verdicts));
            if (c.survives()) {
                row.survives = true;
                ++surviving;
            }
        }
        for (auto& [v, row] : grouped) report.rows.push_back(std::move(row));
        tr.push_back(std::to_string(candidates.size()) + " candidate data with K_X == 0, " + std::to_string(surviving) +
                     " surviving every filter");
    } else if (surface.family == "elliptic-split") {
        supply_transcript(model, tr);
        add_supply_rows(model, elliptic::enumerate_supply_cases(model), report);
    } else if (surface.family == "elliptic-nonsplit-deg0") {
        auto result = elliptic::nonsplit_deg0_check();
        add_supply_rows(model, result.rows, report);
        tr.insert(tr.end(), result.transcript.begin(), result.transcript.end());
    } else if (surface.family == "elliptic-deg1") {
        supply_transcript(model, tr);
        for (const auto& c : elliptic::deg1_case_enumerate()) {
            ReportRow r;
            r.vector = ramification::vector_of(model, c.datum, model.polarization()).to_string();
            r.label = c.label;
            auto entry = make_entry(model, c.datum, c.verdicts);
            entry.witness = make_witness(c.problem, c.solution);
            if (!c.solution.solvable) {
                entry.verdicts.push_back({"cover_family", ramification::VerdictStatus::fail,
                                          "no torsion witness for the cover family"});
                entry.survives = false;
            }
            r.survives = entry.survives;
            r.data.push_back(std::move(entry));
            report.rows.push_back(std::move(r));
            tr.push_back(c.label + ": witness " + (c.solution.solvable ? "found" : "absent"));
        }
    } else {
        throw InvariantViolation("unhandled surface family " + surface.family);
    }

    report.outcome =
        std::any_of(report.rows.begin(), report.rows.end(), [](const ReportRow& r) { return r.survives; })
            ? "nonempty"
            : "EMPTY";
    check_exclusions(report);
    return report;
}

void check_exclusions(const ClassificationReport& report) {
    for (const auto& row : report.rows)
        for (const auto& d : row.data) {
            if (d.survives) continue;
            bool explained = std::any_of(d.verdicts.begin(), d.verdicts.end(), [](const FilterVerdict& v) {
                return v.failed() && !v.reason.empty();
            });
            if (!explained) throw InvariantViolation("excluded datum in row " + row.vector + " has no failing verdict");
        }
}

namespace {

Json verdict_json(const FilterVerdict& v) {
    return Json{{"filter", v.filter_name}, {"status", ramification::to_string(v.status)}, {"reason", v.reason}};
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("report: missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("report: bad field \"") + key + "\": " + e.what());
    }
}

} // namespace

Json to_json(const ClassificationReport& report) {
    Json j;
    j["schema"] = report.schema;
    j["engine"] = report.engine;
    j["input_hash"] = report.input_hash;
    j["surface"] = report.surface;
    j["surface_id"] = report.surface_id;
    j["polarization"] = report.polarization;
    j["mode"] = report.mode;
    j["outcome"] = report.outcome;
    j["transcript"] = report.transcript;
    j["rows"] = Json::array();
    for (const auto& r : report.rows) {
        Json row{{"vector", r.vector}, {"label", r.label}, {"tag", r.tag}, {"survives", r.survives}};
        row["data"] = Json::array();
        for (const auto& d : r.data) {
            Json dj;
            dj["pairs"] = Json::array();
            for (const auto& p : d.pairs) dj["pairs"].push_back({{"class", p.cls}, {"text", p.text}, {"index", p.index}});
            dj["vectors"] = d.vectors;
            dj["verdicts"] = Json::array();
            for (const auto& v : d.verdicts) dj["verdicts"].push_back(verdict_json(v));
            dj["survives"] = d.survives;
            if (d.witness) {
                Json w{{"solvable", d.witness->solvable}, {"level", d.witness->level},
                       {"transcript", d.witness->transcript}};
                w["xi"] = Json::array();
                for (const auto& x : d.witness->xi) w["xi"].push_back({x[0], x[1]});
                dj["witness"] = w;
            }
            row["data"].push_back(dj);
        }
        j["rows"].push_back(row);
    }
    return j;
}

ClassificationReport from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("report must be a JSON object");
    ClassificationReport r;
    r.schema = field<int>(j, "schema");
    if (r.schema != schema_version)
        throw InvalidInput("report schema " + std::to_string(r.schema) + " is not supported (expected " +
                           std::to_string(schema_version) + ")");
    r.engine = field<std::string>(j, "engine");
    r.input_hash = field<std::string>(j, "input_hash");
    r.surface = field<Json>(j, "surface");
    r.surface_id = field<std::string>(j, "surface_id");
    r.polarization = field<std::string>(j, "polarization");
    r.mode = field<std::string>(j, "mode");
    r.outcome = field<std::string>(j, "outcome");
    r.transcript = field<std::vector<std::string>>(j, "transcript");
    for (const auto& rj : field<Json>(j, "rows")) {
        ReportRow row;
        row.vector = field<std::string>(rj, "vector");
        row.label = field<std::string>(rj, "label");
        row.tag = field<std::string>(rj, "tag");
        row.survives = field<bool>(rj, "survives");
        for (const auto& dj : field<Json>(rj, "data")) {
            DatumEntry d;
            for (const auto& pj : field<Json>(dj, "pairs"))
                d.pairs.push_back(
                    {field<std::vector<Int>>(pj, "class"), field<std::string>(pj, "text"), field<Int>(pj, "index")});
            d.vectors = field<std::map<std::string, std::string>>(dj, "vectors");
            for (const auto& vj : field<Json>(dj, "verdicts"))
                d.verdicts.push_back({field<std::string>(vj, "filter"),
                                      ramification::parse_verdict_status(field<std::string>(vj, "status")),
                                      field<std::string>(vj, "reason")});
            d.survives = field<bool>(dj, "survives");
            if (dj.contains("witness")) {
                const Json& wj = dj.at("witness");
                Witness w;
                w.solvable = field<bool>(wj, "solvable");
                w.level = field<Int>(wj, "level");
                w.transcript = field<std::vector<std::string>>(wj, "transcript");
                for (const auto& x : field<Json>(wj, "xi")) {
                    auto v = x.get<std::vector<Int>>();
                    if (v.size() != 2) throw InvalidInput("report: witness element must have 2 entries");
                    w.xi.push_back({v[0], v[1]});
                }
                d.witness = std::move(w);
            }
            row.data.push_back(std::move(d));
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

ClassificationReport parse(const std::string& json_text) { return from_json(config::parse_json(json_text, "report")); }

namespace {

std::string markdown(const ClassificationReport& r) {
    std::ostringstream out;
    out << "# Classification of " << r.surface_id << "\n\n";
    out << "- mode: " << r.mode << "\n";
    out << "- polarization: " << r.polarization << "\n";
    out << "- outcome: " << r.outcome << "\n";
    out << "- engine: " << r.engine << " (schema " << r.schema << ")\n";
    out << "- input hash: " << r.input_hash << "\n\n";
    out << "| vector | case | status | surviving data | tag |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& row : r.rows) {
        auto surviving = std::count_if(row.data.begin(), row.data.end(), [](const DatumEntry& d) { return d.survives; });
        out << "| " << row.vector << " | " << row.label << " | " << (row.survives ? "survives" : "excluded") << " | "
            << surviving << "/" << row.data.size() << " | " << row.tag << " |\n";
    }
    for (const auto& row : r.rows) {
        out << "\n## " << row.vector << (row.label.empty() ? "" : " — " + row.label) << "\n\n";
        if (row.data.empty()) out << "- no data\n";
        for (const auto& d : row.data) {
            out << "- ";
            for (std::size_t i = 0; i < d.pairs.size(); ++i)
                out << (i ? ", " : "") << "(" << d.pairs[i].text << ", " << d.pairs[i].index << ")";
            if (d.pairs.empty()) out << "(no ramification)";
            out << ": " << (d.survives ? "survives" : "excluded");
            for (const auto& v : d.verdicts)
                if (v.failed()) out << "; " << v.filter_name << ": " << v.reason;
            out << "\n";
            if (d.witness)
                for (const auto& line : d.witness->transcript) out << "    - " << line << "\n";
        }
    }
    out << "\n## Transcript\n\n";
    for (const auto& line : r.transcript) out << "- " << line << "\n";
    return out.str();
}

} // namespace

std::string emit(const ClassificationReport& report, std::string_view format) {
    if (format == "json") return to_json(report).dump(2) + "\n";
    if (format == "md") return markdown(report);
    throw InvalidInput("unknown format '" + std::string(format) + "' (json|md)");
}

} // namespace ramdata::report
