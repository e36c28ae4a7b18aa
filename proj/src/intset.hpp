#pragma once

#include "setexpr.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace shiftlab {

using Elems = std::vector<std::int64_t>;

// Symbolic annotations attached by the catalog (never inferred), so that
// exactness claims stay auditable. DisjointFrom/ComplementOf reference a
// set id; IpSet records the generator rule backing the membership claim.
struct Fact {
    enum class Kind { DisjointFrom, ComplementOf, Infinite, IpSet, ImplementerChosen };
    Kind kind;
    std::string detail;
};

// A subset of N_0 described by a generator rule. Values are immutable
// after construction; every query is horizon-bounded and exact.
class IntSet {
public:
    struct Rule;

    IntSet() = default;

    static IntSet finite(Elems elems);
    // Union over n = from, from+1, ... of [lo(n), hi(n)]. lo must be
    // nondecreasing in n so enumeration below a horizon terminates.
    static IntSet interval_union(SetExpr lo, SetExpr hi, std::int64_t from = 1);
    // {modulus*k + r : r in residues, k >= 0} restricted to values >= min.
    static IntSet arithmetic_grid(std::int64_t modulus, Elems residues, std::int64_t min = 0);
    // Finite sums of distinct terms of the (nondecreasing, positive)
    // generator sequence gen(1), gen(2), ...; at most max_generators terms
    // participate, and materialization errors out if the cap is reached
    // while generators still fit below the horizon.
    static IntSet finite_sums(SetExpr gen, int max_generators = 20);
    // Same, with the generator prefix given literally (for sequences
    // defined by recurrences rather than closed forms). Horizons beyond
    // the last stored generator are rejected.
    static IntSet finite_sums_literal(Elems generators);
    static IntSet set_union(std::vector<IntSet> members);
    static IntSet set_intersection(std::vector<IntSet> members);

    // (S + offset) intersected with N_0.
    IntSet shifted(std::int64_t offset) const;
    IntSet complemented() const;
    // Positive pairwise differences realized by elements of *this below
    // witness_horizon (a lower approximation of the true difference set;
    // the witness horizon is pinned at construction so materialization
    // stays prefix-monotone).
    IntSet difference_set(std::int64_t witness_horizon) const;

    bool valid() const { return rule_ != nullptr; }

    // Exactly the elements in [0, horizon], strictly sorted.
    Elems materialize(std::int64_t horizon) const;

    const std::string& id() const { return id_; }
    IntSet& with_id(std::string id);
    const std::vector<Fact>& facts() const { return facts_; }
    IntSet& with_fact(Fact fact);

    std::string describe() const;

    // True only with a symbolic certificate: one side is structurally the
    // complement of the other, or a catalog DisjointFrom fact links them.
    bool symbolically_disjoint_from(const IntSet& other) const;

    const std::shared_ptr<const Rule>& rule() const { return rule_; }

private:
    explicit IntSet(std::shared_ptr<const Rule> rule) : rule_(std::move(rule)) {}

    std::shared_ptr<const Rule> rule_;
    std::string id_;
    std::vector<Fact> facts_;
};

struct Interval {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t length() const { return hi - lo + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Maximal-interval decomposition of a materialized window. Intervals
// shorter than min_length land in residue instead; the final interval is
// flagged when it touches the horizon (its true extent may be larger).
struct IntervalDecomposition {
    std::vector<Interval> intervals;
    Elems residue;
    bool last_truncated = false;
};

IntervalDecomposition decompose_elements(const Elems& elems, std::int64_t horizon, std::int64_t min_length = 1);
IntervalDecomposition interval_decompose(const IntSet& set, std::int64_t horizon, std::int64_t min_length = 1);

} // namespace shiftlab
