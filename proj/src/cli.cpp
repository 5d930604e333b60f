#include "ramdata/cli.hpp"

#include "ramdata/elliptic_ruled.hpp"
#include "ramdata/errors.hpp"
#include "ramdata/golden.hpp"
#include "ramdata/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ramdata::cli {

using config::Json;

namespace {

std::vector<Int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            Int v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw InvalidInput(what + ": \"" + item + "\" is not an integer");
        }
    }
    if (out.empty()) throw InvalidInput(what + " is empty");
    return out;
}

int cmd_classify(const report::ClassifyRequest& request, const std::string& format, const std::string& golden_dir,
                 std::ostream& out) {
    auto rep = report::run_classify(request);
    golden::attach_tags(rep, request, golden_dir);
    out << report::emit(rep, format);
    return exit_ok;
}

int cmd_check(const std::string& surface_sel, std::optional<Int> torsion, const std::string& mode_text,
              const std::string& datum_path, const std::string& format, std::ostream& out) {
    auto surface = config::resolve_surface(surface_sel, torsion);
    const auto& model = surface.model;
    auto datum = config::datum_from_json(model, config::parse_json(config::read_text_file(datum_path), datum_path));
    auto mode = ramification::parse_mode(mode_text);
    auto kx = lattice::k_order(model, datum.pairs());
    bool trivial = lattice::is_numerically_trivial(kx);

    std::vector<ramification::FilterVerdict> verdicts = ramification::rational_filters(model, datum, mode);
    if (!model.is_rational()) verdicts.push_back(elliptic::extremality_filter(model, datum));
    bool passes = trivial && std::none_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.failed(); });

    Json j;
    j["surface_id"] = model.id();
    j["mode"] = ramification::to_string(mode);
    j["k_x"] = model.format(kx);
    j["numerically_trivial"] = trivial;
    j["vectors"] = Json::object();
    for (const auto& [label, h] : model.rulings())
        j["vectors"][label] = ramification::vector_of(model, datum, h).to_string();
    j["verdicts"] = Json::array();
    for (const auto& v : verdicts)
        j["verdicts"].push_back({{"filter", v.filter_name}, {"status", ramification::to_string(v.status)}, {"reason", v.reason}});
    j["passes"] = passes;

    if (format == "json") {
        out << j.dump(2) << "\n";
    } else if (format == "md") {
        out << "surface: " << model.id() << "\n";
        out << "K_X == " << j["k_x"].get<std::string>() << (trivial ? " (numerically trivial)" : " (not trivial)") << "\n";
        for (const auto& v : verdicts)
            out << ramification::to_string(v.status) << " " << v.filter_name << ": " << v.reason << "\n";
        out << (passes ? "PASSES" : "FAILS") << "\n";
    } else {
        throw InvalidInput("unknown format '" + format + "' (json|md)");
    }
    return exit_ok;
}

int cmd_genus(const std::string& surface_sel, std::optional<Int> torsion, const std::string& cls, std::ostream& out) {
    auto surface = config::resolve_surface(surface_sel, torsion);
    auto d = surface.model.make_class(parse_int_list(cls, "--class"));
    out << "p_a(" << surface.model.format(d) << ") = " << lattice::arithmetic_genus(surface.model, d) << "\n";
    return exit_ok;
}

int cmd_solve_kernel(const std::string& path, const std::string& format, std::ostream& out) {
    auto problem = config::problem_from_json(config::parse_json(config::read_text_file(path), path));
    auto s = kernel::solve_cover_family(problem);
    if (format == "json") {
        Json j{{"level", problem.level}, {"solvable", s.solvable}, {"solution_group_order", s.solution_group_order},
               {"transcript", s.transcript}};
        j["witness"] = Json::array();
        for (const auto& x : s.witness) j["witness"].push_back({x[0], x[1]});
        out << j.dump(2) << "\n";
    } else if (format == "md") {
        for (const auto& line : s.transcript) out << line << "\n";
        out << (s.solvable ? "SOLVABLE" : "UNSOLVABLE") << "\n";
    } else {
        throw InvalidInput("unknown format '" + format + "' (json|md)");
    }
    return exit_ok;
}

int cmd_golden(const std::string& dir, std::ostream& out, std::ostream& err) {
    auto summary = golden::run_golden(dir);
    for (const auto& line : summary.lines) out << line << "\n";
    out << summary.passed << " passed, " << summary.failed << " failed\n";
    if (summary.first_divergence) {
        err << "first divergence: " << summary.first_divergence->first << "\n";
        for (const auto& d : summary.first_divergence->second) err << "  " << d << "\n";
        return exit_divergence;
    }
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ramification data of numerically Calabi-Yau orders on surfaces", "ramdata"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(report::engine_version()));

    std::string surface, mode = "terminal", format = "md", golden_dir = golden::default_dir();
    std::string ruling, box, datum, problem, cls;
    Int torsion = 0;

    auto add_surface = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--surface", surface,
                                    "p2, quadric, f<e>, elliptic-split, elliptic-nonsplit-deg0, elliptic-deg1, or a "
                                    "surface config file");
        if (required) opt->required();
        sub->add_option("--torsion", torsion, "order n of L for elliptic-split");
    };

    auto* classify = app.add_subcommand("classify", "classify ramification data on a surface");
    add_surface(classify, true);
    classify->add_option("--mode", mode, "terminal or canonical")->capture_default_str();
    classify->add_option("--ruling", ruling, "polarization used for the vectors (quadric: A or B)");
    classify->add_option("--box", box, "search box: caps \"6\" or \"4,8\", optional \":maxindex\", \"=\" for exact");
    classify->add_option("--format", format, "md or json")->capture_default_str();
    classify->add_option("--golden-dir", golden_dir, "directory with golden tables (citation tags)");

    auto* check = app.add_subcommand("check", "evaluate K_X and the filters on one datum");
    add_surface(check, true);
    check->add_option("--datum", datum, "datum file {\"pairs\": [{\"class\": [..], \"index\": e}]}")->required();
    check->add_option("--mode", mode, "terminal or canonical")->capture_default_str();
    check->add_option("--format", format, "md or json")->capture_default_str();

    auto* golden_cmd = app.add_subcommand("golden", "diff every golden table against a fresh run");
    golden_cmd->add_option("--golden-dir", golden_dir, "directory with golden tables")->capture_default_str();

    auto* genus = app.add_subcommand("genus", "arithmetic genus of a class");
    add_surface(genus, true);
    genus->add_option("--class", cls, "comma-separated coefficients")->required();

    auto* solve = app.add_subcommand("solve-kernel", "solve a cover-family torsion problem");
    solve->add_option("--problem", problem, "kernel problem file")->required();
    solve->add_option("--format", format, "md or json")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_invalid;
    }

    auto torsion_opt = [&](CLI::App* sub) -> std::optional<Int> {
        if (sub->count("--torsion")) return torsion;
        return std::nullopt;
    };

    try {
        if (*classify) {
            report::ClassifyRequest request;
            request.surface = surface;
            request.torsion = torsion_opt(classify);
            request.mode = mode;
            if (classify->count("--ruling")) request.ruling = ruling;
            if (classify->count("--box")) request.box = box;
            return cmd_classify(request, format, golden_dir, out);
        }
        if (*check) return cmd_check(surface, torsion_opt(check), mode, datum, format, out);
        if (*golden_cmd) return cmd_golden(golden_dir, out, err);
        if (*genus) return cmd_genus(surface, torsion_opt(genus), cls, out);
        if (*solve) return cmd_solve_kernel(problem, format, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_invariant;
    }
    return exit_invalid;
}

} // namespace ramdata::cli
