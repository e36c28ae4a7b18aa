#include "intset.hpp"

#include "error.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace shiftlab {

namespace {
constexpr std::int64_t kIterCap = 100000;
constexpr std::size_t kPairwiseCap = 4096;
} // namespace

struct IntSet::Rule {
    enum class Kind { Finite, IntervalUnion, Grid, FiniteSums, Shift, Complement, Union, Intersection, DifferenceSet } kind;

    Elems elems;                 // Finite
    SetExpr lo, hi;              // IntervalUnion
    std::int64_t from = 1;       // IntervalUnion
    std::int64_t modulus = 0;    // Grid
    Elems residues;              // Grid
    std::int64_t min = 0;        // Grid
    SetExpr gen;                 // FiniteSums
    int max_generators = 20;     // FiniteSums
    Elems literal_gens;          // FiniteSums (literal form)
    bool literal = false;        // FiniteSums
    std::int64_t offset = 0;     // Shift
    std::int64_t witness_horizon = 0; // DifferenceSet
    std::vector<IntSet> members; // Shift/Complement/Union/Intersection/DifferenceSet (single member for unary)
};

namespace {

using Rule = IntSet::Rule;

Elems intersect_sorted(const Elems& a, const Elems& b) {
    Elems out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Elems union_sorted(const Elems& a, const Elems& b) {
    Elems out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::int64_t to_index(const BigInt& v, std::int64_t horizon) {
    // Values beyond the horizon only need to compare as "too big".
    if (v > BigInt(horizon)) return horizon + 1;
    if (v < BigInt(std::numeric_limits<std::int64_t>::min() / 4)) return std::numeric_limits<std::int64_t>::min() / 4;
    return static_cast<std::int64_t>(v);
}

Elems emit(const Rule& rule, std::int64_t horizon);

Elems emit_interval_union(const Rule& rule, std::int64_t horizon) {
    Elems out;
    std::int64_t n = rule.from;
    std::int64_t iterations = 0;
    for (;; ++n) {
        if (++iterations > kIterCap)
            fail(ErrorCode::Validation,
                 "interval-union rule did not pass the horizon after " + std::to_string(kIterCap) +
                     " terms (lo=" + rule.lo.str() + "); rule is malformed for horizon-bounded enumeration");
        std::int64_t lo = to_index(rule.lo.eval(n), horizon);
        if (lo > horizon) break;
        std::int64_t hi = to_index(rule.hi.eval(n), horizon);
        if (hi < lo) continue;
        for (std::int64_t v = std::max<std::int64_t>(lo, 0); v <= std::min(hi, horizon); ++v) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Elems emit_grid(const Rule& rule, std::int64_t horizon) {
    Elems out;
    for (std::int64_t base = 0; base <= horizon; base += rule.modulus) {
        for (std::int64_t r : rule.residues) {
            std::int64_t v = base + r;
            if (v >= rule.min && v <= horizon) out.push_back(v);
        }
        if (base > horizon - rule.modulus) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Elems emit_finite_sums(const Rule& rule, std::int64_t horizon) {
    std::vector<std::int64_t> gens;
    if (rule.literal) {
        if (!rule.literal_gens.empty() && horizon >= rule.literal_gens.back())
            fail(ErrorCode::Validation, "finite-sums horizon exceeds the stored generator prefix");
        for (std::int64_t g : rule.literal_gens) {
            if (g > horizon) break;
            gens.push_back(g);
        }
    } else {
        BigInt prev = 0;
        for (int i = 1;; ++i) {
            BigInt g = rule.gen.eval(i);
            if (g <= 0) fail(ErrorCode::Validation, "finite-sums generator must be positive (term " + std::to_string(i) + ")");
            if (g < prev) fail(ErrorCode::Validation, "finite-sums generator must be nondecreasing (term " + std::to_string(i) + ")");
            prev = g;
            if (g > BigInt(horizon)) break;
            if (i > rule.max_generators)
                fail(ErrorCode::Validation,
                     "finite-sums enumeration reached the generator cap (" + std::to_string(rule.max_generators) +
                         ") with generators still below the horizon; raise the cap or lower the horizon");
            gens.push_back(static_cast<std::int64_t>(g));
        }
    }
    std::vector<char> reach(static_cast<std::size_t>(horizon) + 1, 0);
    for (std::int64_t g : gens) {
        // Sweep down so each generator is used at most once per sum.
        for (std::int64_t s = horizon - g; s >= 0; --s)
            if (reach[static_cast<std::size_t>(s)]) reach[static_cast<std::size_t>(s + g)] = 1;
        reach[static_cast<std::size_t>(g)] = 1;
    }
    Elems out;
    for (std::int64_t v = 1; v <= horizon; ++v)
        if (reach[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

Elems emit_difference_set(const Rule& rule, std::int64_t horizon) {
    Elems base = rule.members.front().materialize(rule.witness_horizon);
    Elems out;
    if (base.size() <= kPairwiseCap) {
        std::set<std::int64_t> diffs;
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = i + 1; j < base.size(); ++j) {
                std::int64_t d = base[j] - base[i];
                if (d <= horizon) diffs.insert(d);
            }
        out.assign(diffs.begin(), diffs.end());
        return out;
    }
    // Dense base: word-packed presence mask, one shifted AND per
    // candidate difference.
    std::size_t bits = static_cast<std::size_t>(rule.witness_horizon) + 1;
    std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> mask(words, 0);
    for (std::int64_t v : base) mask[static_cast<std::size_t>(v) >> 6] |= 1ull << (v & 63);
    for (std::int64_t d = 1; d <= horizon; ++d) {
        std::size_t word_shift = static_cast<std::size_t>(d) >> 6;
        unsigned bit_shift = static_cast<unsigned>(d & 63);
        bool hit = false;
        for (std::size_t i = 0; i + word_shift < words && !hit; ++i) {
            std::uint64_t shifted = mask[i + word_shift] >> bit_shift;
            if (bit_shift && i + word_shift + 1 < words) shifted |= mask[i + word_shift + 1] << (64 - bit_shift);
            hit = (mask[i] & shifted) != 0;
        }
        if (hit) out.push_back(d);
    }
    return out;
}

Elems emit(const Rule& rule, std::int64_t horizon) {
    switch (rule.kind) {
    case Rule::Kind::Finite: {
        Elems out;
        for (std::int64_t v : rule.elems)
            if (v >= 0 && v <= horizon) out.push_back(v);
        return out;
    }
    case Rule::Kind::IntervalUnion: return emit_interval_union(rule, horizon);
    case Rule::Kind::Grid: return emit_grid(rule, horizon);
    case Rule::Kind::FiniteSums: return emit_finite_sums(rule, horizon);
    case Rule::Kind::Shift: {
        const IntSet& base = rule.members.front();
        std::int64_t base_horizon = horizon - rule.offset;
        Elems out;
        if (base_horizon >= 0) {
            for (std::int64_t v : base.materialize(base_horizon)) {
                std::int64_t shifted = v + rule.offset;
                if (shifted >= 0 && shifted <= horizon) out.push_back(shifted);
            }
        }
        return out;
    }
    case Rule::Kind::Complement: {
        Elems inside = rule.members.front().materialize(horizon);
        Elems out;
        std::size_t idx = 0;
        for (std::int64_t v = 0; v <= horizon; ++v) {
            if (idx < inside.size() && inside[idx] == v)
                ++idx;
            else
                out.push_back(v);
        }
        return out;
    }
    case Rule::Kind::Union: {
        Elems out;
        for (const IntSet& m : rule.members) out = union_sorted(out, m.materialize(horizon));
        return out;
    }
    case Rule::Kind::Intersection: {
        Elems out = rule.members.front().materialize(horizon);
        for (std::size_t i = 1; i < rule.members.size(); ++i) out = intersect_sorted(out, rule.members[i].materialize(horizon));
        return out;
    }
    case Rule::Kind::DifferenceSet: return emit_difference_set(rule, horizon);
    }
    fail(ErrorCode::Internal, "unreachable rule kind");
}

std::string describe_rule(const Rule& rule);

std::string describe_member(const IntSet& set) {
    if (!set.id().empty()) return set.id();
    return set.describe();
}

std::string describe_rule(const Rule& rule) {
    switch (rule.kind) {
    case Rule::Kind::Finite: {
        std::string s = "finite{";
        for (std::size_t i = 0; i < rule.elems.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(rule.elems[i]);
        }
        return s + "}";
    }
    case Rule::Kind::IntervalUnion:
        return "intervals(n from " + std::to_string(rule.from) + ": [" + rule.lo.str() + ", " + rule.hi.str() + "])";
    case Rule::Kind::Grid: {
        std::string s = "grid(mod=" + std::to_string(rule.modulus) + ", residues={";
        for (std::size_t i = 0; i < rule.residues.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(rule.residues[i]);
        }
        s += "}";
        if (rule.min != 0) s += ", min=" + std::to_string(rule.min);
        return s + ")";
    }
    case Rule::Kind::FiniteSums:
        if (rule.literal) return "finitesums(<literal prefix of " + std::to_string(rule.literal_gens.size()) + " generators>)";
        return "finitesums(" + rule.gen.str() + ", depth=" + std::to_string(rule.max_generators) + ")";
    case Rule::Kind::Shift:
        return "shift(" + describe_member(rule.members.front()) + ", " +
               (rule.offset >= 0 ? "+" : "") + std::to_string(rule.offset) + ")";
    case Rule::Kind::Complement: return "complement(" + describe_member(rule.members.front()) + ")";
    case Rule::Kind::Union: {
        std::string s = "union(";
        for (std::size_t i = 0; i < rule.members.size(); ++i) {
            if (i) s += ", ";
            s += describe_member(rule.members[i]);
        }
        return s + ")";
    }
    case Rule::Kind::Intersection: {
        std::string s = "intersect(";
        for (std::size_t i = 0; i < rule.members.size(); ++i) {
            if (i) s += ", ";
            s += describe_member(rule.members[i]);
        }
        return s + ")";
    }
    case Rule::Kind::DifferenceSet:
        return "diffset(" + describe_member(rule.members.front()) + ", within=" + std::to_string(rule.witness_horizon) + ")";
    }
    return "?";
}

} // namespace

IntSet IntSet::finite(Elems elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (std::int64_t v : elems)
        if (v < 0) fail(ErrorCode::InvalidArgument, "finite set elements must be non-negative");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Finite;
    rule->elems = std::move(elems);
    return IntSet(std::move(rule));
}

IntSet IntSet::interval_union(SetExpr lo, SetExpr hi, std::int64_t from) {
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::IntervalUnion;
    rule->lo = std::move(lo);
    rule->hi = std::move(hi);
    rule->from = from;
    return IntSet(std::move(rule));
}

IntSet IntSet::arithmetic_grid(std::int64_t modulus, Elems residues, std::int64_t min) {
    if (modulus <= 0) fail(ErrorCode::InvalidArgument, "grid modulus must be positive");
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    for (std::int64_t r : residues)
        if (r < 0 || r >= modulus) fail(ErrorCode::InvalidArgument, "grid residues must lie in [0, modulus)");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Grid;
    rule->modulus = modulus;
    rule->residues = std::move(residues);
    rule->min = min;
    return IntSet(std::move(rule));
}

IntSet IntSet::finite_sums(SetExpr gen, int max_generators) {
    if (max_generators < 1) fail(ErrorCode::InvalidArgument, "finite-sums generator cap must be at least 1");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::FiniteSums;
    rule->gen = std::move(gen);
    rule->max_generators = max_generators;
    return IntSet(std::move(rule));
}

IntSet IntSet::finite_sums_literal(Elems generators) {
    if (generators.empty()) fail(ErrorCode::InvalidArgument, "literal finite-sums needs at least one generator");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i] <= 0) fail(ErrorCode::InvalidArgument, "finite-sums generators must be positive");
        if (i && generators[i] < generators[i - 1]) fail(ErrorCode::InvalidArgument, "finite-sums generators must be nondecreasing");
    }
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::FiniteSums;
    rule->literal = true;
    rule->literal_gens = std::move(generators);
    return IntSet(std::move(rule));
}

IntSet IntSet::set_union(std::vector<IntSet> members) {
    if (members.empty()) fail(ErrorCode::InvalidArgument, "union needs at least one member");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Union;
    rule->members = std::move(members);
    return IntSet(std::move(rule));
}

IntSet IntSet::set_intersection(std::vector<IntSet> members) {
    if (members.empty()) fail(ErrorCode::InvalidArgument, "intersection needs at least one member");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Intersection;
    rule->members = std::move(members);
    return IntSet(std::move(rule));
}

IntSet IntSet::shifted(std::int64_t offset) const {
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Shift;
    rule->offset = offset;
    rule->members = {*this};
    return IntSet(std::move(rule));
}

IntSet IntSet::complemented() const {
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::Complement;
    rule->members = {*this};
    return IntSet(std::move(rule));
}

IntSet IntSet::difference_set(std::int64_t witness_horizon) const {
    if (witness_horizon < 0) fail(ErrorCode::InvalidArgument, "difference-set witness horizon must be non-negative");
    auto rule = std::make_shared<Rule>();
    rule->kind = Rule::Kind::DifferenceSet;
    rule->witness_horizon = witness_horizon;
    rule->members = {*this};
    return IntSet(std::move(rule));
}

Elems IntSet::materialize(std::int64_t horizon) const {
    if (!rule_) fail(ErrorCode::InvalidArgument, "materialize on empty IntSet");
    if (horizon < 0) fail(ErrorCode::InvalidArgument, "horizon must be non-negative");
    return emit(*rule_, horizon);
}

IntSet& IntSet::with_id(std::string id) {
    id_ = std::move(id);
    return *this;
}

IntSet& IntSet::with_fact(Fact fact) {
    facts_.push_back(std::move(fact));
    return *this;
}

std::string IntSet::describe() const {
    if (!rule_) return "<empty>";
    return describe_rule(*rule_);
}

bool IntSet::symbolically_disjoint_from(const IntSet& other) const {
    auto complement_of = [](const IntSet& a, const IntSet& b) {
        if (!a.rule() || a.rule()->kind != Rule::Kind::Complement) return false;
        const IntSet& inner = a.rule()->members.front();
        if (inner.rule() == b.rule()) return true;
        return !inner.id().empty() && inner.id() == b.id();
    };
    if (complement_of(*this, other) || complement_of(other, *this)) return true;
    auto has_disjoint_fact = [](const IntSet& a, const IntSet& b) {
        if (b.id().empty()) return false;
        for (const Fact& f : a.facts())
            if (f.kind == Fact::Kind::DisjointFrom && f.detail == b.id()) return true;
        return false;
    };
    return has_disjoint_fact(*this, other) || has_disjoint_fact(other, *this);
}

IntervalDecomposition decompose_elements(const Elems& elems, std::int64_t horizon, std::int64_t min_length) {
    IntervalDecomposition out;
    std::size_t i = 0;
    while (i < elems.size()) {
        std::size_t j = i;
        while (j + 1 < elems.size() && elems[j + 1] == elems[j] + 1) ++j;
        Interval iv{elems[i], elems[j]};
        if (iv.length() >= min_length)
            out.intervals.push_back(iv);
        else
            for (std::int64_t v = iv.lo; v <= iv.hi; ++v) out.residue.push_back(v);
        i = j + 1;
    }
    if (!out.intervals.empty() && out.intervals.back().hi >= horizon) out.last_truncated = true;
    return out;
}

IntervalDecomposition interval_decompose(const IntSet& set, std::int64_t horizon, std::int64_t min_length) {
    return decompose_elements(set.materialize(horizon), horizon, min_length);
}

} // namespace shiftlab
