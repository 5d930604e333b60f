#include "ramdata/ram_enum.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace ramdata::ramification {

using lattice::arithmetic_genus;
using lattice::intersect;
using lattice::QDivisorClass;

// ---------------------------------------------------------------------------
// RamificationDatum

RamificationDatum::RamificationDatum(const SurfaceModel& surface, std::vector<RamifiedCurve> pairs)
    : surface_id_(surface.id()), pairs_(std::move(pairs)) {
    for (const auto& p : pairs_) {
        lattice::require_same_lattice(surface, p.cls);
        if (p.index < 2)
            throw InvalidInput("ramification index " + std::to_string(p.index) + " on " + surface.format(p.cls) +
                               " is below 2");
        if (!lattice::is_irreducible_class(surface, p.cls))
            throw InvalidInput("class " + surface.format(p.cls) + " has no irreducible curve on " + surface.id());
    }
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t i = 1; i < pairs_.size(); ++i)
        if (pairs_[i].cls == pairs_[i - 1].cls && lattice::is_rigid_class(surface, pairs_[i].cls))
            throw InvalidInput("rigid class " + surface.format(pairs_[i].cls) + " carries a single curve");
}

DivisorClass RamificationDatum::sum_where_divisible(const SurfaceModel& surface, Int divisor) const {
    DivisorClass sum = surface.zero();
    for (const auto& p : pairs_)
        if (p.index % divisor == 0) sum += p.cls;
    return sum;
}

DivisorClass RamificationDatum::sum_with_index(const SurfaceModel& surface, Int index) const {
    DivisorClass sum = surface.zero();
    for (const auto& p : pairs_)
        if (p.index == index) sum += p.cls;
    return sum;
}

DivisorClass RamificationDatum::total(const SurfaceModel& surface) const {
    DivisorClass sum = surface.zero();
    for (const auto& p : pairs_) sum += p.cls;
    return sum;
}

std::string RamificationVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries[i]);
    }
    return s + ")";
}

RamificationVector vector_of(const SurfaceModel& surface, const RamificationDatum& datum, const DivisorClass& h) {
    lattice::require_same_lattice(surface, h);
    RamificationVector v;
    for (const auto& p : datum.pairs()) {
        Int m = intersect(surface, p.cls, h);
        if (m < 0)
            throw InvalidInput("invalid polarization: " + surface.format(p.cls) + " . " + surface.format(h) + " = " +
                               std::to_string(m) + " < 0");
        v.entries.insert(v.entries.end(), static_cast<std::size_t>(m), p.index);
    }
    std::sort(v.entries.begin(), v.entries.end());
    return v;
}

// ---------------------------------------------------------------------------
// Verdicts

std::string_view to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

VerdictStatus parse_verdict_status(std::string_view s) {
    if (s == "pass") return VerdictStatus::pass;
    if (s == "fail") return VerdictStatus::fail;
    if (s == "not_applicable") return VerdictStatus::not_applicable;
    throw InvalidInput("unknown verdict status '" + std::string(s) + "'");
}

std::string_view to_string(Mode m) { return m == Mode::terminal ? "terminal" : "canonical"; }

Mode parse_mode(std::string_view s) {
    if (s == "terminal") return Mode::terminal;
    if (s == "canonical") return Mode::canonical;
    throw InvalidInput("unknown mode '" + std::string(s) + "' (expected terminal|canonical)");
}

bool nef_precheck(const SurfaceModel& surface) { return nef_verdict(surface).passed(); }

FilterVerdict nef_verdict(const SurfaceModel& surface) {
    FilterVerdict v{std::string(filter_names::nef), VerdictStatus::pass, ""};
    const DivisorClass anti = -surface.canonical();
    for (const auto& e : surface.cone_generators()) {
        Int d = intersect(surface, anti, e);
        if (d < 0) {
            v.status = VerdictStatus::fail;
            v.reason = "-K." + surface.format(e) + " = " + std::to_string(d) + " < 0";
            return v;
        }
    }
    v.reason = "-K nonnegative on " + std::to_string(surface.cone_generators().size()) + " extremal classes";
    return v;
}

namespace {

std::vector<Int> prime_factors(Int n) {
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

Int prime_power_part(Int n, Int p) {
    Int q = 1;
    while (n % p == 0) {
        n /= p;
        q *= p;
    }
    return q;
}

} // namespace

FilterVerdict artin_filter(const SurfaceModel& surface, const RamificationDatum& datum) {
    FilterVerdict v{std::string(filter_names::artin), VerdictStatus::pass, ""};
    if (!surface.is_rational()) {
        v.status = VerdictStatus::not_applicable;
        v.reason = "genus bound only holds on rational surfaces";
        return v;
    }
    std::vector<Int> primes;
    for (const auto& p : datum.pairs())
        for (Int q : prime_factors(p.index)) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    if (primes.empty()) {
        v.reason = "no ramification";
        return v;
    }

    std::ostringstream pass_notes, fail_notes;
    for (Int p : primes) {
        Int pmax = 1;
        for (const auto& pr : datum.pairs()) pmax = std::max(pmax, prime_power_part(pr.index, p));
        DivisorClass cp = datum.sum_where_divisible(surface, pmax);
        Int genus = arithmetic_genus(surface, cp);
        std::string note = "p=" + std::to_string(p) + " (p^max=" + std::to_string(pmax) + "): C^" + std::to_string(p) +
                           " = " + surface.format(cp) + ", p_a = " + std::to_string(genus);
        if (genus < 1) {
            if (!fail_notes.str().empty()) fail_notes << "; ";
            fail_notes << note << " < 1";
        } else {
            if (!pass_notes.str().empty()) pass_notes << "; ";
            pass_notes << note;
        }
    }
    if (!fail_notes.str().empty()) {
        v.status = VerdictStatus::fail;
        v.reason = fail_notes.str();
    } else {
        v.reason = pass_notes.str();
    }
    return v;
}

FilterVerdict node_divisibility_filter(const SurfaceModel& surface, const RamificationDatum& datum) {
    FilterVerdict v{std::string(filter_names::node), VerdictStatus::pass, ""};
    const auto& ps = datum.pairs();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            Int lo = std::min(ps[i].index, ps[j].index);
            Int hi = std::max(ps[i].index, ps[j].index);
            if (hi % lo == 0) continue;
            Int meet = intersect(surface, ps[i].cls, ps[j].cls);
            if (meet <= 0) continue;
            v.status = VerdictStatus::fail;
            v.reason = "indices " + std::to_string(ps[i].index) + " and " + std::to_string(ps[j].index) +
                       " meet at nodes: " + surface.format(ps[i].cls) + " . " + surface.format(ps[j].cls) + " = " +
                       std::to_string(meet);
            return v;
        }
    }
    v.reason = "every meeting pair has nested indices";
    return v;
}

std::vector<FilterVerdict> rational_filters(const SurfaceModel& surface, const RamificationDatum& datum, Mode mode) {
    std::vector<FilterVerdict> out;
    out.push_back(nef_verdict(surface));
    out.push_back(artin_filter(surface, datum));
    if (mode == Mode::terminal) {
        out.push_back(node_divisibility_filter(surface, datum));
    } else {
        out.push_back({std::string(filter_names::node), VerdictStatus::not_applicable, "disabled in canonical mode"});
    }
    return out;
}

bool Candidate::survives() const {
    return std::none_of(verdicts.begin(), verdicts.end(), [](const FilterVerdict& v) { return v.failed(); });
}

const FilterVerdict* Candidate::verdict(std::string_view name) const {
    for (const auto& v : verdicts)
        if (v.filter_name == name) return &v;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Enumeration

std::optional<SearchBox> builtin_box(const SurfaceModel& surface) {
    switch (surface.kind()) {
    case lattice::SurfaceKind::projective_plane:
    case lattice::SurfaceKind::quadric:
    case lattice::SurfaceKind::hirzebruch: {
        SearchBox box;
        for (Int c : surface.canonical().coeffs) box.cap.push_back(checked_mul(-2, c));
        return box;
    }
    default: return std::nullopt;
    }
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("RAMDATA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

class Enumerator {
public:
    Enumerator(const SurfaceModel& surface, Mode mode, SearchBox box)
        : surface_(surface), mode_(mode), box_(std::move(box)), functional_(surface.positive_functional()) {
        if (functional_) target_ = intersect(surface_, -surface_.canonical(), *functional_);
        collect_classes();
    }

    std::size_t root_count() const { return classes_.size(); }

    // Explores every multiset whose smallest class is classes_[root].
    void run_root(std::size_t root, std::vector<Candidate>& out) {
        std::vector<Int> usage(surface_.rank(), 0);
        std::vector<std::size_t> chosen;
        extend(root, usage, chosen, 0, out);
    }

private:
    struct Group {
        std::size_t cls;
        Int count;
    };

    void collect_classes() {
        const std::size_t r = surface_.rank();
        std::vector<Int> c(r);
        // Odometer over prod_j [-cap_j, cap_j].
        for (std::size_t j = 0; j < r; ++j) c[j] = -box_.cap[j];
        while (true) {
            DivisorClass d = surface_.make_class(c);
            if (!d.is_zero() && lattice::is_irreducible_class(surface_, d)) {
                if (!functional_ || intersect(surface_, d, *functional_) >= 1) classes_.push_back(d);
            }
            std::size_t j = 0;
            while (j < r && c[j] == box_.cap[j]) {
                c[j] = -box_.cap[j];
                ++j;
            }
            if (j == r) break;
            ++c[j];
        }
        std::sort(classes_.begin(), classes_.end());
        for (const auto& d : classes_) {
            weights_.push_back(functional_ ? intersect(surface_, d, *functional_) : 0);
            rigid_.push_back(lattice::is_rigid_class(surface_, d));
        }
        if (functional_) {
            bounds_ = surface_.nef_generators();
            bounds_.push_back(*functional_);
        }
        for (const auto& n : bounds_) {
            std::vector<Int> ws;
            for (const auto& d : classes_) ws.push_back(intersect(surface_, d, n));
            bound_weights_.push_back(std::move(ws));
            std::vector<Int> dual;
            for (std::size_t j = 0; j < surface_.rank(); ++j) dual.push_back(intersect(surface_, surface_.basis(j), n));
            bound_duals_.push_back(std::move(dual));
        }
    }

    void extend(std::size_t next, std::vector<Int>& usage, std::vector<std::size_t>& chosen, Int weight,
                std::vector<Candidate>& out) {
        const auto& d = classes_[next];
        for (std::size_t j = 0; j < usage.size(); ++j) {
            Int a = d.coeffs[j] < 0 ? -d.coeffs[j] : d.coeffs[j];
            if (usage[j] + a > box_.cap[j]) return;
        }
        const Int new_weight = weight + weights_[next];
        // Weights are >= 1/2, so the scalar budget caps the total.
        if (functional_ && new_weight > 2 * target_) return;

        for (std::size_t j = 0; j < usage.size(); ++j) usage[j] += d.coeffs[j] < 0 ? -d.coeffs[j] : d.coeffs[j];
        chosen.push_back(next);

        if (!box_.exact || usage == box_.cap) assign_indices(chosen, out);
        const std::size_t start = rigid_[next] ? next + 1 : next;
        for (std::size_t i = start; i < classes_.size(); ++i) extend(i, usage, chosen, new_weight, out);

        chosen.pop_back();
        for (std::size_t j = 0; j < usage.size(); ++j) usage[j] -= d.coeffs[j] < 0 ? -d.coeffs[j] : d.coeffs[j];
    }

    void assign_indices(const std::vector<std::size_t>& chosen, std::vector<Candidate>& out) {
        std::vector<Group> groups;
        for (std::size_t idx : chosen) {
            if (!groups.empty() && groups.back().cls == idx)
                ++groups.back().count;
            else
                groups.push_back({idx, 1});
        }
        if (functional_) {
            Int total = 0;
            for (const auto& g : groups) total += g.count * weights_[g.cls];
            if (2 * target_ < total || total <= target_) return;
        }
        QDivisorClass residual{{}, surface_.id()};
        for (Int c : surface_.canonical().coeffs) residual.coeffs.emplace_back(-c);
        std::vector<Int> remaining;
        for (const auto& g : groups) remaining.push_back(g.count);
        std::vector<RamifiedCurve> pairs;
        descend(2, groups, remaining, residual, pairs, out);
    }

    // Can the remaining curves, all with index >= e, still close the residual?
    // Every functional N with D.N >= 0 on irreducible classes gives
    // (1 - 1/e) W_N <= R.N < W_N, W_N = sum of D.N over remaining curves.
    bool admissible_index(Int e, const std::vector<Group>& groups, const std::vector<Int>& remaining,
                          const QDivisorClass& residual) const {
        if (box_.max_index && e > *box_.max_index) return false;
        if (!functional_) return box_.max_index.has_value();
        for (std::size_t k = 0; k < bounds_.size(); ++k) {
            Int w = 0;
            for (std::size_t g = 0; g < groups.size(); ++g) w += remaining[g] * bound_weights_[k][groups[g].cls];
            Rational r(0);
            for (std::size_t j = 0; j < residual.coeffs.size(); ++j) r += residual.coeffs[j] * Rational(bound_duals_[k][j]);
            if (w == 0) {
                if (!r.is_zero()) return false;
                continue;
            }
            if (!(r < Rational(w))) return false;
            if (Rational(e - 1, e) * Rational(w) > r) return false;
        }
        return true;
    }

    // Assigns index e to some of the remaining curves of groups[g..]; each
    // level must use index e at least once so recursion depth stays bounded
    // by the number of curves.
    void level(Int e, std::size_t g, bool used, const std::vector<Group>& groups, std::vector<Int>& remaining,
               QDivisorClass& residual, std::vector<RamifiedCurve>& pairs, std::vector<Candidate>& out) {
        if (g == groups.size()) {
            if (!used) return;
            descend(e + 1, groups, remaining, residual, pairs, out);
            return;
        }
        const Int available = remaining[g];
        const DivisorClass& d = classes_[groups[g].cls];
        const Rational w = Rational(e - 1, e);
        for (Int t = 0; t <= available; ++t) {
            if (t > 0) {
                residual.add_scaled(-w, d);
                pairs.push_back({d, e});
                --remaining[g];
            }
            level(e, g + 1, used || t > 0, groups, remaining, residual, pairs, out);
        }
        for (Int t = 0; t < available; ++t) {
            residual.add_scaled(w, d);
            pairs.pop_back();
            ++remaining[g];
        }
    }

    void descend(Int from, const std::vector<Group>& groups, std::vector<Int>& remaining, QDivisorClass& residual,
                 std::vector<RamifiedCurve>& pairs, std::vector<Candidate>& out) {
        if (std::all_of(remaining.begin(), remaining.end(), [](Int c) { return c == 0; })) {
            if (lattice::is_numerically_trivial(residual)) emit(pairs, out);
            return;
        }
        for (Int e = from; admissible_index(e, groups, remaining, residual); ++e)
            level(e, 0, false, groups, remaining, residual, pairs, out);
    }

    void emit(const std::vector<RamifiedCurve>& pairs, std::vector<Candidate>& out) const {
        RamificationDatum datum(surface_, pairs);
        auto k = lattice::k_order(surface_, datum.pairs());
        if (!lattice::is_numerically_trivial(k))
            throw InvariantViolation("enumerator emitted a datum with nontrivial K_X");
        out.push_back({datum, rational_filters(surface_, datum, mode_)});
    }

    const SurfaceModel& surface_;
    Mode mode_;
    SearchBox box_;
    std::optional<DivisorClass> functional_;
    Int target_ = 0;
    std::vector<DivisorClass> classes_;
    std::vector<Int> weights_;
    std::vector<bool> rigid_;
    std::vector<DivisorClass> bounds_;
    std::vector<std::vector<Int>> bound_weights_;  // [functional][class]
    std::vector<std::vector<Int>> bound_duals_;    // [functional][basis]
};

} // namespace

std::vector<Candidate> enumerate_ncy(const SurfaceModel& surface, Mode mode, const std::optional<SearchBox>& box,
                                     unsigned threads) {
    if (surface.kind() == lattice::SurfaceKind::ruled_elliptic)
        throw InvalidInput("enumerate_ncy handles rational and generic surfaces; use the elliptic case analysis");
    std::optional<SearchBox> effective = box ? box : builtin_box(surface);
    if (!effective) throw InvalidInput("surface '" + surface.id() + "' has no built-in bounds; supply a search box");
    if (effective->cap.size() != surface.rank())
        throw InvalidInput("search box has " + std::to_string(effective->cap.size()) + " caps, lattice rank is " +
                           std::to_string(surface.rank()));
    for (Int c : effective->cap)
        if (c < 0) throw InvalidInput("search box caps must be nonnegative");
    if (!surface.positive_functional() && !effective->max_index)
        throw InvalidInput("surface '" + surface.id() + "' needs an explicit index cap (max_index) in the search box");

    std::vector<Candidate> result;
    // The empty datum is NCY only when K itself is numerically trivial.
    if (!effective->exact || std::all_of(effective->cap.begin(), effective->cap.end(), [](Int c) { return c == 0; })) {
        if (surface.canonical().is_zero()) {
            RamificationDatum empty(surface, {});
            result.push_back({empty, rational_filters(surface, empty, mode)});
        }
    }

    Enumerator en(surface, mode, *effective);
    const std::size_t roots = en.root_count();
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, roots)));

    std::vector<std::vector<Candidate>> per_root(roots);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < roots; i = next++) en.run_root(i, per_root[i]);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& part : per_root) std::move(part.begin(), part.end(), std::back_inserter(result));
    std::sort(result.begin(), result.end(),
              [](const Candidate& a, const Candidate& b) { return a.datum < b.datum; });
    return result;
}

} // namespace ramdata::ramification
