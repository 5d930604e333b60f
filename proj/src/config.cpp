#include "ramdata/config.hpp"

#include "ramdata/elliptic_ruled.hpp"
#include "ramdata/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ramdata::config {

namespace {

void require_object(const Json& j, const std::string& what, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw InvalidInput(what + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw InvalidInput(what + ": unknown field \"" + it.key() + "\"");
}

Int get_int(const Json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key)) throw InvalidInput(what + ": missing field \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidInput(what + ": \"" + key + "\" must be an integer");
    return v.get<Int>();
}

std::vector<Int> int_list(const Json& v, const std::string& what) {
    if (!v.is_array()) throw InvalidInput(what + " must be an array of integers");
    std::vector<Int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw InvalidInput(what + " must be an array of integers");
        out.push_back(x.get<Int>());
    }
    return out;
}

std::vector<std::vector<Int>> int_matrix(const Json& v, const std::string& what) {
    if (!v.is_array()) throw InvalidInput(what + " must be an array of integer arrays");
    std::vector<std::vector<Int>> out;
    for (const auto& row : v) out.push_back(int_list(row, what));
    return out;
}

kernel::Matrix2 matrix2(const Json& v, const std::string& what) {
    auto m = int_matrix(v, what);
    if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw InvalidInput(what + " must be 2x2");
    return {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}};
}

kernel::Element element(const Json& v, const std::string& what) {
    auto x = int_list(v, what);
    if (x.size() != 2) throw InvalidInput(what + " must have 2 entries");
    return {x[0], x[1]};
}

Surface elliptic_surface(const std::string& bundle, std::optional<Int> torsion) {
    Json d;
    d["kind"] = "ruled_elliptic";
    d["bundle"] = bundle;
    if (bundle == "split") {
        if (!torsion) throw InvalidInput("elliptic-split needs a torsion order (--torsion n)");
        if (*torsion < 1) throw InvalidInput("torsion order must be >= 1");
        d["e"] = 0;
        d["torsion"] = *torsion;
        return {elliptic::SplitRuledConfig{*torsion}.surface(), "elliptic-split", d};
    }
    if (torsion) throw InvalidInput("torsion only applies to the split bundle");
    if (bundle == "nonsplit-deg0") {
        d["e"] = 0;
        return {SurfaceModel::ruled_elliptic(0, elliptic::nonsplit_degree0_supply()), "elliptic-nonsplit-deg0", d};
    }
    if (bundle == "nonsplit-deg1") {
        d["e"] = -1;
        return {elliptic::degree1_surface(), "elliptic-deg1", d};
    }
    throw InvalidInput("unknown bundle \"" + bundle + "\" (split, nonsplit-deg0, nonsplit-deg1)");
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InvalidInput(what + ": malformed JSON: " + e.what());
    }
}

Surface surface_from_json(const Json& j) {
    const std::string what = "surface config";
    require_object(j, what,
                   {"kind", "e", "torsion", "rank", "gram", "canonical", "labels", "cone", "polarization", "bundle"});
    if (!j.contains("kind") || !j.at("kind").is_string()) throw InvalidInput(what + ": missing string field \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();

    auto reject = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            if (j.contains(k)) throw InvalidInput(what + ": \"" + k + "\" is not allowed for kind " + kind);
    };

    if (kind != "generic") reject({"rank", "gram", "canonical", "labels", "cone", "polarization"});

    if (kind == "projective_plane" || kind == "p2") {
        reject({"e", "torsion", "bundle"});
        return {SurfaceModel::projective_plane(), "rational", Json{{"kind", "projective_plane"}}};
    }
    if (kind == "quadric") {
        reject({"e", "torsion", "bundle"});
        return {SurfaceModel::quadric(), "rational", Json{{"kind", "quadric"}}};
    }
    if (kind == "hirzebruch") {
        reject({"torsion", "bundle"});
        Int e = get_int(j, "e", what);
        if (e < 0) throw InvalidInput(what + ": hirzebruch invariant e must be >= 0");
        return {SurfaceModel::hirzebruch(e), "rational", Json{{"kind", "hirzebruch"}, {"e", e}}};
    }
    if (kind == "ruled_elliptic") {
        if (!j.contains("bundle") || !j.at("bundle").is_string())
            throw InvalidInput(what + ": ruled_elliptic needs \"bundle\" (split, nonsplit-deg0, nonsplit-deg1)");
        std::optional<Int> torsion;
        if (j.contains("torsion")) torsion = get_int(j, "torsion", what);
        Surface s = elliptic_surface(j.at("bundle").get<std::string>(), torsion);
        if (j.contains("e") && get_int(j, "e", what) != s.model.invariant_e())
            throw InvalidInput(what + ": e does not match the bundle (expected " +
                               std::to_string(s.model.invariant_e()) + ")");
        return s;
    }
    if (kind == "generic") {
        reject({"e", "torsion", "bundle"});
        if (!j.contains("gram") || !j.contains("canonical"))
            throw InvalidInput(what + ": generic kind needs \"gram\" and \"canonical\"");
        auto gram = int_matrix(j.at("gram"), "gram");
        auto canonical = int_list(j.at("canonical"), "canonical");
        if (j.contains("rank") && get_int(j, "rank", what) != static_cast<Int>(gram.size()))
            throw InvalidInput(what + ": rank does not match the gram matrix");
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            if (!j.at("labels").is_array()) throw InvalidInput(what + ": labels must be an array of strings");
            for (const auto& l : j.at("labels")) {
                if (!l.is_string()) throw InvalidInput(what + ": labels must be an array of strings");
                labels.push_back(l.get<std::string>());
            }
        }
        std::vector<std::vector<Int>> cone;
        if (j.contains("cone")) cone = int_matrix(j.at("cone"), "cone");
        std::optional<std::vector<Int>> pol;
        if (j.contains("polarization")) pol = int_list(j.at("polarization"), "polarization");
        auto model = SurfaceModel::generic(gram, canonical, labels, cone, pol);
        Json d = j;
        d["rank"] = model.rank();
        return {std::move(model), "generic", d};
    }
    throw InvalidInput(what + ": unknown kind \"" + kind + "\"");
}

Surface resolve_surface(const std::string& selector, std::optional<Int> torsion) {
    if (selector == "elliptic-split") return elliptic_surface("split", torsion);
    if (selector == "elliptic-nonsplit-deg0") return elliptic_surface("nonsplit-deg0", torsion);
    if (selector == "elliptic-deg1") return elliptic_surface("nonsplit-deg1", torsion);
    if (torsion) throw InvalidInput("--torsion only applies to --surface elliptic-split");
    if (selector == "p2") return surface_from_json(Json{{"kind", "projective_plane"}});
    if (selector == "quadric") return surface_from_json(Json{{"kind", "quadric"}});
    if (selector.size() >= 2 && selector[0] == 'f' &&
        selector.find_first_not_of("0123456789", 1) == std::string::npos && selector.size() <= 4)
        return surface_from_json(Json{{"kind", "hirzebruch"}, {"e", std::stoll(selector.substr(1))}});
    if (selector.find('/') != std::string::npos || selector.find(".json") != std::string::npos)
        return surface_from_json(parse_json(read_text_file(selector), selector));
    throw InvalidInput("unknown surface \"" + selector +
                       "\" (p2, quadric, f<e>, elliptic-split, elliptic-nonsplit-deg0, elliptic-deg1, or a config path)");
}

ramification::RamificationDatum datum_from_json(const SurfaceModel& surface, const Json& j) {
    const std::string what = "datum file";
    require_object(j, what, {"pairs"});
    if (!j.contains("pairs") || !j.at("pairs").is_array()) throw InvalidInput(what + ": missing array \"pairs\"");
    std::vector<lattice::RamifiedCurve> pairs;
    for (const auto& p : j.at("pairs")) {
        require_object(p, what + " pair", {"class", "index"});
        if (!p.contains("class")) throw InvalidInput(what + ": pair without \"class\"");
        auto cls = surface.make_class(int_list(p.at("class"), "class"));
        pairs.push_back({std::move(cls), get_int(p, "index", what)});
    }
    return ramification::RamificationDatum(surface, std::move(pairs));
}

kernel::CoverFamilyProblem problem_from_json(const Json& j) {
    const std::string what = "kernel problem";
    require_object(j, what, {"level", "curves", "require_exact_order"});
    kernel::CoverFamilyProblem problem;
    problem.level = get_int(j, "level", what);
    if (j.contains("require_exact_order")) {
        if (!j.at("require_exact_order").is_boolean()) throw InvalidInput(what + ": require_exact_order must be boolean");
        problem.require_exact_order = j.at("require_exact_order").get<bool>();
    }
    if (!j.contains("curves") || !j.at("curves").is_array()) throw InvalidInput(what + ": missing array \"curves\"");
    int n = 0;
    for (const auto& c : j.at("curves")) {
        ++n;
        require_object(c, what + " curve", {"label", "degree", "matrix", "kernel", "dual", "index"});
        kernel::CoverCurve curve;
        curve.index = get_int(c, "index", what);
        auto& iso = curve.isogeny;
        iso.label = "curve " + std::to_string(n);
        if (c.contains("label")) {
            if (!c.at("label").is_string()) throw InvalidInput(what + ": label must be a string");
            iso.label = c.at("label").get<std::string>();
        }
        iso.degree = get_int(c, "degree", what);
        iso.source_level = iso.target_level = problem.level;
        if (!c.contains("matrix")) throw InvalidInput(what + ": curve without \"matrix\"");
        iso.matrix = matrix2(c.at("matrix"), "matrix");
        if (!c.contains("kernel") || !c.at("kernel").is_array()) throw InvalidInput(what + ": curve without \"kernel\"");
        for (const auto& g : c.at("kernel")) iso.declared_kernel.push_back(element(g, "kernel generator"));
        if (c.contains("dual")) iso.dual = matrix2(c.at("dual"), "dual");
        problem.curves.push_back(std::move(curve));
    }
    problem.validate();
    return problem;
}

ramification::SearchBox parse_box(const std::string& text) {
    ramification::SearchBox box;
    std::string s = text;
    if (!s.empty() && s[0] == '=') {
        box.exact = true;
        s = s.substr(1);
    }
    std::string caps = s;
    if (auto colon = s.find(':'); colon != std::string::npos) {
        caps = s.substr(0, colon);
        std::string mi = s.substr(colon + 1);
        if (mi.empty() || mi.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("--box: bad max index \"" + mi + "\"");
        box.max_index = std::stoll(mi);
        if (*box.max_index < 2) throw InvalidInput("--box: max index must be >= 2");
    }
    std::stringstream ss(caps);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.size() > 6 || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("--box: bad cap \"" + item + "\"");
        box.cap.push_back(std::stoll(item));
    }
    if (box.cap.empty()) throw InvalidInput("--box: no caps given");
    return box;
}

} // namespace ramdata::config
