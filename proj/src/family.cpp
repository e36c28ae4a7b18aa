#include "family.hpp"

#include "error.hpp"

#include <algorithm>
#include <map>

namespace shiftlab {

std::string to_string(Status s) {
    switch (s) {
    case Status::Witnessed: return "witnessed";
    case Status::Refuted: return "refuted";
    case Status::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Certainty c) { return c == Certainty::Absolute ? "absolute" : "horizon"; }

nlohmann::json Verdict::to_json() const {
    return nlohmann::json{{"query", query},   {"params", params},
                          {"horizon", horizon}, {"status", to_string(status)},
                          {"certainty", to_string(certainty)}, {"witness", witness}};
}

GapLocation max_gap(const IntSet& set, std::int64_t N) {
    Elems elems = set.materialize(N);
    if (elems.empty()) fail(ErrorCode::Validation, "max_gap: no elements below horizon " + std::to_string(N));
    GapLocation best{elems.front(), 0, elems.front(), true};
    for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
        std::int64_t gap = elems[i + 1] - elems[i];
        if (gap > best.gap) best = GapLocation{gap, elems[i], elems[i + 1], false};
    }
    return best;
}

namespace family {

namespace {

nlohmann::json gap_json(const GapLocation& g) {
    return nlohmann::json{{"gap", g.gap}, {"from", g.from}, {"to", g.to}, {"leading", g.leading}};
}

// First run of at least k consecutive elements; nullopt if none.
std::optional<std::int64_t> first_run_of(const Elems& elems, std::int64_t k, std::int64_t* longest = nullptr,
                                         std::int64_t* longest_at = nullptr) {
    std::int64_t best = 0, best_at = -1;
    std::size_t i = 0;
    std::optional<std::int64_t> found;
    while (i < elems.size()) {
        std::size_t j = i;
        while (j + 1 < elems.size() && elems[j + 1] == elems[j] + 1) ++j;
        std::int64_t run = static_cast<std::int64_t>(j - i) + 1;
        if (run > best) {
            best = run;
            best_at = elems[i];
        }
        if (!found && run >= k) found = elems[i];
        i = j + 1;
    }
    if (longest) *longest = best;
    if (longest_at) *longest_at = best_at;
    return found;
}

} // namespace

Verdict thick_witness(const IntSet& set, std::int64_t k, std::int64_t N) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "thick_witness: k must be >= 1");
    Verdict v;
    v.query = "thick";
    v.params = {{"k", k}};
    v.horizon = N;
    Elems elems = set.materialize(N);
    std::int64_t longest = 0, longest_at = -1;
    auto start = first_run_of(elems, k, &longest, &longest_at);
    if (start) {
        v.status = Status::Witnessed;
        v.certainty = Certainty::Absolute;
        v.witness = {{"run_start", *start}, {"run_length", k}};
    } else {
        // Thickness is never refutable below a horizon.
        v.status = Status::Unknown;
        v.witness = {{"longest_run", longest}, {"longest_run_start", longest_at}};
    }
    return v;
}

Verdict syndetic_bound_check(const IntSet& set, std::int64_t b, std::int64_t N) {
    if (b < 1) fail(ErrorCode::InvalidArgument, "syndetic_bound_check: b must be >= 1");
    Verdict v;
    v.query = "syndetic";
    v.params = {{"b", b}};
    v.horizon = N;
    GapLocation g = max_gap(set, N);
    if (g.gap > b) {
        v.status = Status::Refuted;
        v.certainty = Certainty::Absolute;
        v.witness = gap_json(g);
    } else {
        v.status = Status::Witnessed;
        v.certainty = Certainty::HorizonOnly;
        v.witness = {{"max_gap", gap_json(g)}};
    }
    return v;
}

Elems shrink_by_window(const Elems& elems, std::int64_t k, std::int64_t N) {
    // n qualifies iff [n-k, n+k] is contained in the set; only n <= N-k is
    // decidable from a materialization up to N.
    Elems out;
    std::size_t i = 0;
    while (i < elems.size()) {
        std::size_t j = i;
        while (j + 1 < elems.size() && elems[j + 1] == elems[j] + 1) ++j;
        std::int64_t lo = elems[i] + k, hi = std::min(elems[j] - k, N - k);
        for (std::int64_t n = lo; n <= hi; ++n)
            if (n >= 0) out.push_back(n);
        i = j + 1;
    }
    return out;
}

namespace {

// Shared by the thickly-syndetic check: A_k = {n : [n, n+k] subset A}
// within [0, N-k].
Elems forward_window_set(const Elems& elems, std::int64_t k, std::int64_t N) {
    Elems out;
    std::size_t i = 0;
    while (i < elems.size()) {
        std::size_t j = i;
        while (j + 1 < elems.size() && elems[j + 1] == elems[j] + 1) ++j;
        for (std::int64_t n = elems[i]; n + k <= elems[j] && n <= N - k; ++n) out.push_back(n);
        i = j + 1;
    }
    return out;
}

Verdict syndetic_on_elements(const Elems& elems, std::int64_t b, std::int64_t M) {
    // Bound-b syndeticity of an explicitly materialized window [0, M].
    Verdict v;
    v.horizon = M;
    if (elems.empty()) {
        if (M + 1 > b) {
            v.status = Status::Refuted;
            v.certainty = Certainty::Absolute;
            v.witness = {{"empty_below", M}, {"leading_gap_at_least", M + 1}};
        } else {
            v.status = Status::Unknown;
            v.witness = {{"empty_below", M}};
        }
        return v;
    }
    GapLocation best{elems.front(), 0, elems.front(), true};
    for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
        std::int64_t gap = elems[i + 1] - elems[i];
        if (gap > best.gap) best = GapLocation{gap, elems[i], elems[i + 1], false};
    }
    if (best.gap > b) {
        v.status = Status::Refuted;
        v.certainty = Certainty::Absolute;
        v.witness = gap_json(best);
    } else {
        v.status = Status::Witnessed;
        v.certainty = Certainty::HorizonOnly;
        v.witness = {{"max_gap", gap_json(best)}};
    }
    return v;
}

} // namespace

Verdict thickly_syndetic_check(const IntSet& set, std::int64_t k, std::int64_t b, std::int64_t N) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "thickly_syndetic_check: k must be >= 0");
    Elems elems = set.materialize(N);
    Verdict v = syndetic_on_elements(forward_window_set(elems, k, N), b, N - k);
    v.query = "thickly_syndetic";
    v.params = {{"k", k}, {"b", b}};
    v.horizon = N;
    return v;
}

Verdict piecewise_syndetic_check(const IntSet& set, std::int64_t k, std::int64_t b, std::int64_t N) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "piecewise_syndetic_check: k must be >= 1");
    if (b < 0) fail(ErrorCode::InvalidArgument, "piecewise_syndetic_check: b must be >= 0");
    Verdict v;
    v.query = "piecewise_syndetic";
    v.params = {{"k", k}, {"b", b}};
    v.horizon = N;
    // b-thickening characterization: piecewise syndetic with parameters
    // (k, b) iff {n : dist(n, A) <= b} contains k consecutive integers.
    Elems elems = set.materialize(N);
    Elems thickened;
    std::int64_t next_free = 0;
    for (std::int64_t e : elems) {
        std::int64_t lo = std::max<std::int64_t>(std::max<std::int64_t>(e - b, 0), next_free);
        std::int64_t hi = std::min<std::int64_t>(e + b, N);
        for (std::int64_t vpos = lo; vpos <= hi; ++vpos) thickened.push_back(vpos);
        next_free = std::max(next_free, hi + 1);
    }
    std::int64_t longest = 0, longest_at = -1;
    auto start = first_run_of(thickened, k, &longest, &longest_at);
    if (start) {
        v.status = Status::Witnessed;
        v.certainty = Certainty::Absolute;
        v.witness = {{"run_start", *start}, {"run_length", k}};
    } else {
        v.status = Status::Unknown;
        v.witness = {{"longest_thickened_run", longest}, {"at", longest_at}};
    }
    return v;
}

bool verify_ip_witness(const IntSet& set, const Elems& generators, std::int64_t N) {
    Elems elems = set.materialize(N);
    auto contains = [&](std::int64_t x) { return std::binary_search(elems.begin(), elems.end(), x); };
    std::size_t d = generators.size();
    if (d == 0 || d > 24) return false;
    for (std::uint64_t mask = 1; mask < (1ull << d); ++mask) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (1ull << i)) sum += generators[i];
        if (sum > N || !contains(sum)) return false;
    }
    return true;
}

Verdict ip_witness_search(const IntSet& set, int depth, std::int64_t N) {
    if (depth < 1) fail(ErrorCode::InvalidArgument, "ip_witness_search: depth must be >= 1");
    Verdict v;
    v.query = "ip";
    v.params = {{"depth", depth}};
    v.horizon = N;

    Elems elems = set.materialize(N);
    std::vector<char> member(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t e : elems) member[static_cast<std::size_t>(e)] = 1;
    Elems candidates;
    for (std::int64_t e : elems)
        if (e >= 1) candidates.push_back(e);

    Elems chosen;
    std::vector<std::int64_t> sums; // all nonempty subset sums of chosen
    // Depth-first over nondecreasing candidates, pruning as soon as any
    // partial sum leaves the set.
    auto dfs = [&](auto&& self, std::size_t from_idx) -> bool {
        if (static_cast<int>(chosen.size()) == depth) return true;
        for (std::size_t ci = from_idx; ci < candidates.size(); ++ci) {
            std::int64_t x = candidates[ci];
            if (!sums.empty() && sums.back() + x > N) break; // sums.back() is the current total
            bool ok = true;
            for (std::int64_t s : sums)
                if (s + x > N || !member[static_cast<std::size_t>(s + x)]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<std::int64_t> saved = sums;
            std::size_t old_size = sums.size();
            sums.push_back(x);
            for (std::size_t i = 0; i < old_size; ++i) sums.push_back(saved[i] + x);
            std::sort(sums.begin(), sums.end());
            chosen.push_back(x);
            if (self(self, ci)) return true; // same index allowed again: values may repeat
            chosen.pop_back();
            sums = std::move(saved);
        }
        return false;
    };
    if (dfs(dfs, 0)) {
        v.status = Status::Witnessed;
        v.certainty = Certainty::Absolute;
        v.witness = {{"generators", chosen}, {"sums_checked", (1ll << depth) - 1}};
    } else {
        v.status = Status::Unknown;
        v.witness = {{"note", "depth-bounded backtracking found no generator prefix"}};
    }
    return v;
}

Verdict dual_refutation(const IntSet& set, const IntSet& witness_member, std::int64_t N) {
    Verdict v;
    v.query = "dual_refutation";
    v.params = {{"member", witness_member.id().empty() ? witness_member.describe() : witness_member.id()}};
    v.horizon = N;
    Elems a = set.materialize(N);
    Elems b = witness_member.materialize(N);
    Elems common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (!common.empty()) {
        v.status = Status::Unknown;
        v.witness = {{"meets_member_at", common.front()},
                     {"note", "intersection with this member is nonempty; dual membership undecided"}};
        return v;
    }
    if (set.symbolically_disjoint_from(witness_member)) {
        v.status = Status::Refuted;
        v.certainty = Certainty::Absolute;
        v.witness = {{"symbolic_disjointness", true},
                     {"note", "set is symbolically disjoint from a genuine family member"}};
        return v;
    }
    v.status = Status::Unknown;
    v.witness = {{"disjoint_up_to_horizon", true},
                 {"note", "no symbolic disjointness fact; horizon disjointness alone does not refute"}};
    return v;
}

family::DensityStats density_stats(const IntSet& set, std::int64_t N, const std::vector<std::int64_t>& window_lengths,
                                   std::int64_t range_lo, std::int64_t range_hi) {
    if (N < 1) fail(ErrorCode::InvalidArgument, "density_stats: horizon must be >= 1");
    if (range_hi < 0) range_hi = N - 1;
    if (range_lo < 0 || range_hi > N - 1 || range_lo > range_hi)
        fail(ErrorCode::InvalidArgument, "density_stats: bad window range");
    Elems elems = set.materialize(N - 1);
    DensityStats out;
    out.horizon = N;
    out.count = static_cast<std::int64_t>(elems.size());
    out.density = Rat(BigInt(out.count), BigInt(N));

    // Prefix counts over [0, N-1] for O(1) window counts.
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(N) + 1, 0);
    std::size_t idx = 0;
    for (std::int64_t v = 0; v < N; ++v) {
        std::int64_t here = 0;
        if (idx < elems.size() && elems[idx] == v) {
            here = 1;
            ++idx;
        }
        prefix[static_cast<std::size_t>(v + 1)] = prefix[static_cast<std::size_t>(v)] + here;
    }
    for (std::int64_t L : window_lengths) {
        if (L < 1 || L > range_hi - range_lo + 1)
            fail(ErrorCode::InvalidArgument, "density_stats: window length " + std::to_string(L) + " exceeds range");
        WindowStats ws;
        ws.length = L;
        ws.min_count = L + 1;
        ws.max_count = -1;
        for (std::int64_t m = range_lo; m + L - 1 <= range_hi; ++m) {
            std::int64_t c = prefix[static_cast<std::size_t>(m + L)] - prefix[static_cast<std::size_t>(m)];
            if (c < ws.min_count) {
                ws.min_count = c;
                ws.min_at = m;
            }
            if (c > ws.max_count) {
                ws.max_count = c;
                ws.max_at = m;
            }
        }
        ws.min_ratio = Rat(BigInt(ws.min_count), BigInt(L));
        ws.max_ratio = Rat(BigInt(ws.max_count), BigInt(L));
        out.windows.push_back(std::move(ws));
    }
    return out;
}

nlohmann::json DensityStats::to_json() const {
    nlohmann::json windows_json = nlohmann::json::array();
    for (const auto& w : windows)
        windows_json.push_back({{"length", w.length},
                                {"min_count", w.min_count},
                                {"max_count", w.max_count},
                                {"min_at", w.min_at},
                                {"max_at", w.max_at},
                                {"min_ratio", w.min_ratio.str()},
                                {"max_ratio", w.max_ratio.str()}});
    return nlohmann::json{{"horizon", horizon},
                          {"count", count},
                          {"density", density.str()},
                          {"upper_estimate", density.str()},
                          {"lower_estimate", density.str()},
                          {"windows", windows_json}};
}

Verdict tilde_membership_check(const IntSet& set, std::int64_t k_max, const FamilyPredicate& inner, std::int64_t N) {
    if (k_max < 0) fail(ErrorCode::InvalidArgument, "tilde_membership_check: k_max must be >= 0");
    Verdict out;
    out.query = "tilde_membership";
    out.params = {{"k_max", k_max}, {"inner", inner.name()}};
    out.horizon = N;
    Elems elems = set.materialize(N);
    nlohmann::json per_k = nlohmann::json::array();
    Status agg = Status::Witnessed;
    Certainty cert = Certainty::Absolute;
    for (std::int64_t k = 0; k <= k_max; ++k) {
        IntSet shrunk = IntSet::finite(shrink_by_window(elems, k, N));
        Verdict v = inner.eval(shrunk, N - k);
        per_k.push_back({{"k", k}, {"status", to_string(v.status)}, {"witness", v.witness}});
        if (v.certainty == Certainty::HorizonOnly) cert = Certainty::HorizonOnly;
        if (v.status == Status::Refuted) {
            agg = Status::Refuted;
            out.witness = {{"failed_at_k", k}, {"per_k", per_k}};
            break;
        }
        if (v.status == Status::Unknown && agg == Status::Witnessed) agg = Status::Unknown;
    }
    out.status = agg;
    out.certainty = cert;
    if (out.witness.empty()) out.witness = {{"per_k", per_k}};
    return out;
}

} // namespace family

FamilyPredicate FamilyPredicate::parse(const std::string& text) {
    FamilyPredicate p;
    p.name_ = text;
    auto colon = text.find(':');
    p.kind_ = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            auto eq = item.find('=');
            if (eq == std::string::npos) fail(ErrorCode::Parse, "predicate parameter must be key=value: '" + item + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
            pos = comma == std::string::npos ? rest.size() : comma + 1;
        }
    }
    auto get_int = [&](const std::string& key, std::int64_t* out) {
        auto it = kv.find(key);
        if (it == kv.end()) fail(ErrorCode::Parse, "predicate '" + p.kind_ + "' needs parameter " + key);
        *out = std::stoll(it->second);
    };
    if (p.kind_ == "thick") {
        get_int("k", &p.k_);
    } else if (p.kind_ == "syndetic") {
        get_int("b", &p.b_);
    } else if (p.kind_ == "thickly" || p.kind_ == "piecewise") {
        get_int("k", &p.k_);
        get_int("b", &p.b_);
    } else if (p.kind_ == "ip") {
        std::int64_t d = 0;
        get_int("depth", &d);
        p.depth_ = static_cast<int>(d);
    } else if (p.kind_ == "nonempty" || p.kind_ == "cofinite") {
        // no parameters
    } else if (p.kind_ == "density_at_least") {
        auto it = kv.find("r");
        if (it == kv.end()) fail(ErrorCode::Parse, "density_at_least needs r=");
        p.r_ = Rat::parse(it->second);
    } else if (p.kind_ == "lower_banach_at_least") {
        get_int("L", &p.L_);
        auto it = kv.find("r");
        if (it == kv.end()) fail(ErrorCode::Parse, "lower_banach_at_least needs r=");
        p.r_ = Rat::parse(it->second);
    } else {
        fail(ErrorCode::UnknownName, "unknown family predicate '" + p.kind_ + "'");
    }
    return p;
}

Verdict FamilyPredicate::eval(const IntSet& set, std::int64_t N) const {
    using namespace family;
    if (kind_ == "thick") return thick_witness(set, k_, N);
    if (kind_ == "syndetic") return syndetic_bound_check(set, b_, N);
    if (kind_ == "thickly") return thickly_syndetic_check(set, k_, b_, N);
    if (kind_ == "piecewise") return piecewise_syndetic_check(set, k_, b_, N);
    if (kind_ == "ip") return ip_witness_search(set, depth_, N);
    if (kind_ == "nonempty") {
        Verdict v;
        v.query = "nonempty";
        v.horizon = N;
        Elems elems = set.materialize(N);
        if (!elems.empty()) {
            v.status = Status::Witnessed;
            v.certainty = Certainty::Absolute;
            v.witness = {{"element", elems.front()}};
        } else {
            v.status = Status::Refuted;
            v.certainty = Certainty::HorizonOnly;
            v.witness = {{"empty_below", N}};
        }
        return v;
    }
    if (kind_ == "cofinite") {
        // Horizon-consistency for cofiniteness: the set must contain a
        // tail [t, N] covering at least half the window, so that the
        // missing part is genuinely confined to a small prefix.
        Verdict v;
        v.query = "cofinite";
        v.horizon = N;
        Elems elems = set.materialize(N);
        if (!elems.empty() && elems.back() == N) {
            std::int64_t tail_start = N;
            for (std::size_t i = elems.size(); i-- > 1;) {
                if (elems[i - 1] + 1 != elems[i]) break;
                tail_start = elems[i - 1];
            }
            if (tail_start <= N / 2) {
                v.status = Status::Witnessed;
                v.certainty = Certainty::HorizonOnly;
                v.witness = {{"tail_start", tail_start}, {"tail_length", N - tail_start + 1}};
            } else {
                v.status = Status::Unknown;
                v.witness = {{"tail_start", tail_start}, {"note", "tail covers less than half the window"}};
            }
        } else {
            v.status = Status::Unknown;
            v.witness = {{"missing_at", N}};
        }
        return v;
    }
    if (kind_ == "density_at_least") {
        Verdict v;
        v.query = "density_at_least";
        v.params = {{"r", r_.str()}};
        v.horizon = N;
        auto stats = density_stats(set, N, {});
        bool ok = stats.density >= r_;
        v.status = ok ? Status::Witnessed : Status::Refuted;
        v.certainty = Certainty::HorizonOnly;
        v.witness = {{"density", stats.density.str()}, {"count", stats.count}};
        return v;
    }
    if (kind_ == "lower_banach_at_least") {
        Verdict v;
        v.query = "lower_banach_at_least";
        v.params = {{"L", L_}, {"r", r_.str()}};
        v.horizon = N;
        auto stats = density_stats(set, N, {L_});
        bool ok = stats.windows.front().min_ratio >= r_;
        v.status = ok ? Status::Witnessed : Status::Refuted;
        v.certainty = Certainty::HorizonOnly;
        v.witness = {{"min_ratio", stats.windows.front().min_ratio.str()},
                     {"min_at", stats.windows.front().min_at}};
        return v;
    }
    fail(ErrorCode::Internal, "unhandled predicate kind");
}

} // namespace shiftlab
