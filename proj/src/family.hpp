#pragma once

#include "intset.hpp"
#include "rat.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// Three-valued, horizon-bounded answer. Witnessed/Refuted verdicts carry
// a re-checkable payload; asymptotic properties are never settled at a
// finite horizon, which the certainty flag makes explicit: Absolute means
// the payload proves the claim outright (a run, a gap), HorizonOnly means
// the verdict is consistency with everything visible below the horizon.
enum class Status { Witnessed, Refuted, Unknown };
enum class Certainty { Absolute, HorizonOnly };

struct Verdict {
    Status status = Status::Unknown;
    Certainty certainty = Certainty::Absolute;
    std::string query;
    nlohmann::json params = nlohmann::json::object();
    std::int64_t horizon = 0;
    nlohmann::json witness = nlohmann::json::object();

    nlohmann::json to_json() const;
};

std::string to_string(Status s);
std::string to_string(Certainty c);

struct GapLocation {
    std::int64_t gap = 0;
    std::int64_t from = 0; // 0 stands for the left edge when leading is set
    std::int64_t to = 0;
    bool leading = false;
};

// Largest difference between consecutive elements in [0, N], including
// the edge gap from 0 to the first element; errors when the window is
// empty.
GapLocation max_gap(const IntSet& set, std::int64_t N);

namespace family {

Verdict thick_witness(const IntSet& set, std::int64_t k, std::int64_t N);
Verdict syndetic_bound_check(const IntSet& set, std::int64_t b, std::int64_t N);
Verdict thickly_syndetic_check(const IntSet& set, std::int64_t k, std::int64_t b, std::int64_t N);
Verdict piecewise_syndetic_check(const IntSet& set, std::int64_t k, std::int64_t b, std::int64_t N);
Verdict ip_witness_search(const IntSet& set, int depth, std::int64_t N);
Verdict dual_refutation(const IntSet& set, const IntSet& witness_member, std::int64_t N);

// Exhaustively validates that all 2^d - 1 finite sums of the generator
// prefix lie in the set below N.
bool verify_ip_witness(const IntSet& set, const Elems& generators, std::int64_t N);

struct WindowStats {
    std::int64_t length = 0;
    std::int64_t min_count = 0;
    std::int64_t max_count = 0;
    std::int64_t min_at = 0;
    std::int64_t max_at = 0;
    Rat min_ratio;
    Rat max_ratio;
};

struct DensityStats {
    std::int64_t horizon = 0;
    std::int64_t count = 0; // elements <= horizon - 1
    Rat density;            // count / horizon; doubles as the upper and lower estimate
    std::vector<WindowStats> windows;
    nlohmann::json to_json() const;
};

// Exact counts and sliding-window extremes. Windows of each requested
// length slide over [range_lo, range_hi] (default [0, N-1]).
DensityStats density_stats(const IntSet& set, std::int64_t N, const std::vector<std::int64_t>& window_lengths,
                           std::int64_t range_lo = 0, std::int64_t range_hi = -1);

} // namespace family

// Named family predicate over an IntSet at a horizon, parseable from
// "thick:k=5", "syndetic:b=2", "thickly:k=3,b=50", "piecewise:k=6,b=0",
// "ip:depth=3", "nonempty", "cofinite", "density_at_least:r=1/9",
// "lower_banach_at_least:L=100,r=99/100".
class FamilyPredicate {
public:
    static FamilyPredicate parse(const std::string& text);

    Verdict eval(const IntSet& set, std::int64_t N) const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::string kind_;
    std::int64_t k_ = 0;
    std::int64_t b_ = 0;
    int depth_ = 0;
    std::int64_t L_ = 0;
    Rat r_;
};

namespace family {

// For k = 0..k_max forms {n : [n-k, n+k downto F]} and applies the inner
// predicate; Witnessed only when every k passes.
Verdict tilde_membership_check(const IntSet& set, std::int64_t k_max, const FamilyPredicate& inner, std::int64_t N);

// The window-shrunk set {n in [0, N-k] : [n-k, n+k] subset of F}.
Elems shrink_by_window(const Elems& elems, std::int64_t k, std::int64_t N);

} // namespace family

} // namespace shiftlab
