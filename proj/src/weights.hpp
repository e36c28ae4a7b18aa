#pragma once

#include "error.hpp"
#include "rat.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

enum class Side { Unilateral, Bilateral };

std::string to_string(Side side);

// c0 or lp (p >= 1, rational). Norms of basis vectors are 1 in both, so
// the base only matters where ball geometry couples coordinates.
struct SpaceKind {
    enum class Base { C0, Lp };
    Base base = Base::C0;
    Rat p = Rat(2);
    Side side = Side::Unilateral;

    static SpaceKind c0(Side side) { return {Base::C0, Rat(2), side}; }
    static SpaceKind lp(Rat p, Side side);
    static SpaceKind parse(const std::string& text, Side side); // "c0" or "lp:2" / "lp:3/2"
    std::string str() const;
};

// Weight sequence with exact values: dyadic (value = 2^e) on the fast
// path, positive rationals otherwise. Indices cover [lo, hi]; unilateral
// sequences start at 0.
class WeightSeq {
public:
    WeightSeq() = default;

    static WeightSeq dyadic(Side side, std::int64_t lo, std::vector<std::int64_t> exponents);
    static WeightSeq rational(Side side, std::int64_t lo, std::vector<Rat> values);

    Side side() const { return side_; }
    bool is_dyadic() const { return dyadic_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(size()) - 1; }
    std::size_t size() const { return dyadic_ ? exps_.size() : vals_.size(); }

    std::int64_t exponent_at(std::int64_t n) const; // dyadic only
    Rat value_at(std::int64_t n) const;

    // Invertibility bookkeeping over the stored range: sup of the
    // weights and of their reciprocals (both finite iff the shift and
    // its inverse are bounded).
    Rat sup_weight() const;
    Rat sup_inverse_weight() const;

    const std::string& id() const { return id_; }
    WeightSeq& with_id(std::string id) {
        id_ = std::move(id);
        return *this;
    }

    // File format: header `side=uni|bi repr=dyadic|rational`, then one
    // `index value` per line (value = integer exponent or num[/den]).
    static WeightSeq from_text(std::string_view text);
    std::string to_text() const;

private:
    void check_range(std::int64_t n) const;

    Side side_ = Side::Unilateral;
    bool dyadic_ = true;
    std::int64_t lo_ = 0;
    std::vector<std::int64_t> exps_;
    std::vector<Rat> vals_;
    std::string id_;
};

// Cumulative products as exponent sums: E(0) = 0, E(n) = sum_{1..n} e(i)
// for n > 0 and E(n) = -sum_{n+1..0} e(i) for n < 0, so that the product
// w_1...w_n equals 2^{E(n)} and any window product is a difference.
class ProductTable {
public:
    static ProductTable build(const WeightSeq& w);
    static ProductTable build(const WeightSeq& w, std::int64_t lo, std::int64_t hi);

    Side side() const { return side_; }
    bool is_dyadic() const { return dyadic_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(count_) - 1; }

    std::int64_t exponent(std::int64_t n) const; // dyadic only
    Rat product(std::int64_t n) const;           // w_1...w_n (or reciprocal tail for n<0)

    // w_{j+1} ... w_{j+n}
    std::int64_t forward_exp(std::int64_t j, std::int64_t n) const;
    Rat forward(std::int64_t j, std::int64_t n) const;
    // w_j w_{j-1} ... w_{j-n+1}
    std::int64_t backward_exp(std::int64_t j, std::int64_t n) const;
    Rat backward(std::int64_t j, std::int64_t n) const;

    nlohmann::json to_json() const;

private:
    void check(std::int64_t n) const;

    Side side_ = Side::Unilateral;
    bool dyadic_ = true;
    std::int64_t lo_ = 0;
    std::size_t count_ = 0;
    std::vector<std::int64_t> cum_exp_;
    std::vector<Rat> cum_val_;
};

// v_n = w_{1-n}; reflecting twice restores the original (range permitting).
WeightSeq adjoint_reflect(const WeightSeq& w);

// Norms of coordinate vectors in the sequence space that carries the
// conjugated plain shift: ||e_n|| = 1 / (w_1...w_n), which for n < 0
// equals w_{n+1}...w_0. Verified against the intertwining
// phi(x)_n = x_n * (w_1...w_n), phi o B_w = B o phi.
struct NormSeq {
    Side side = Side::Unilateral;
    bool dyadic = true;
    std::int64_t lo = 0;
    std::vector<std::int64_t> exps; // log2 ||e_n||
    std::vector<Rat> vals;
    std::string weight_id;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(dyadic ? exps.size() : vals.size()) - 1; }
    std::int64_t exp_at(std::int64_t n) const;
    Rat norm_at(std::int64_t n) const;
};

NormSeq conjugate_basis_norms(const WeightSeq& w, const SpaceKind& space, std::int64_t lo, std::int64_t hi);

// Finitely supported rational vector, sorted by coordinate index.
struct SparseVec {
    std::vector<std::pair<std::int64_t, Rat>> entries;

    static SparseVec unit(std::int64_t index) { return SparseVec{{{index, Rat(1)}}}; }
    Rat at(std::int64_t index) const;
    void set(std::int64_t index, Rat value);
};

// B_w x: (B_w x)_i = w_{i+1} x_{i+1}.
SparseVec apply_weighted_backward_shift(const WeightSeq& w, const SparseVec& x);
// Plain backward shift.
SparseVec apply_plain_backward_shift(const SparseVec& x, Side side);
// phi(x)_n = x_n * (w_1...w_n); the conjugating map onto the plain shift.
SparseVec conjugation_map(const ProductTable& table, const SparseVec& x);

struct ReturnTimeReport {
    std::string condition;
    std::vector<std::int64_t> members;            // exact (c0) or certified superset (lp)
    std::vector<std::int64_t> sufficient_members; // equal to members when exact
    std::string certification;                    // "exact" or "bracket"
    std::string space;
    std::string radius;
    std::string weight_id;
    std::int64_t horizon = 0;

    nlohmann::json to_json() const;
};

// N(W, W) for the radius-rho ball W around e_0, intersected with [0, N].
// On c0 the answer is exact: m qualifies iff w_1...w_m > (1-rho)/rho and,
// bilaterally, w_{-m+1}...w_0 < rho/(1-rho). On lp the report brackets
// the truth between a certified necessary superset (the same coordinate
// conditions) and a certified sufficient subset.
ReturnTimeReport return_time_e0_ball(const WeightSeq& w, const SpaceKind& space, const Rat& rho, std::int64_t N);

// Exact c0 return times between balls around finitely supported centers:
// m qualifies iff for every coordinate i the intervals
// (a_{i+m}-delta, a_{i+m}+delta) and ((b_i-delta)/P, (b_i+delta)/P)
// intersect, with P the forward window product w_{i+1}...w_{i+m}.
ReturnTimeReport return_time_c0_general(const WeightSeq& w, const SparseVec& a, const SparseVec& b, const Rat& delta,
                                        std::int64_t N);

} // namespace shiftlab
