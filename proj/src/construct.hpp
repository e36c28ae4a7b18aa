#pragma once

#include "intset.hpp"
#include "weights.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace shiftlab {
namespace construct {

// One labelled block of the weight layout, run-length encoded as
// (exponent, count) pairs over ascending indices.
struct Block {
    std::string label;
    std::int64_t start = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;

    std::int64_t length() const {
        std::int64_t n = 0;
        for (const auto& [e, c] : runs) n += c;
        return n;
    }
};

struct BlockLayout {
    std::vector<Block> blocks; // ascending start, tiles the built range with no gaps or overlaps
    std::map<std::string, Elems> recurrences;
    Elems preprocessed;             // kept elements (wag/adjoint)
    Elems dropped;                  // preprocessing residue
    std::int64_t structured_hi = 0; // last index covered by an interval block
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

// Blocks B_1, A_1, B_{b_1}, A_2, B_{b_2}, ... with A_n = n twos then
// 2^{-n}, B_n = n ones, b_1 = 2 and b_{n+1} = 2 b_n + n + 2. The weight
// covers indices 0..2*b_depth.
std::pair<WeightSeq, BlockLayout> example1_weight(int depth);

// Blocks C_1, A_1, B_{b_1,1}, C_{c_1}, ..., A_n = n twos,
// B_{b,m} = b ones then 2^{-m}, C_n = n ones; s_0 = 1, s_1 = 3,
// s_{n+1} = 2(3(s_n - 1) + n + 1) + n, b_n = s_n - 1 - a_n,
// c_n = 2(s_n - 1) - 1, a_n = 3(s_{n-1} - 1) + n. Covers 0..3(s_depth - 1).
std::pair<WeightSeq, BlockLayout> example2_weight(int depth);

// Cofinite-set weight: exponent +1 on [L, +inf), 0 on [0, L-1], -1 on
// negatives; built over [-horizon-pad, horizon+pad].
std::pair<WeightSeq, BlockLayout> wag_weight_cofinite(std::int64_t L, std::int64_t horizon);

struct WagResult {
    WeightSeq w;
    BlockLayout layout;
    IntSet preprocessed; // F' as an explicit set (horizon-bounded)
};

// Interval/gap block weight for F below horizon N. Preprocessing drops
// 0 and 1 and every maximal interval shorter than 2, yielding F'.
// Guarantees within the horizon: E(m) = 0 off F'; E(m) >= r when
// {m-r..m+r+1} lies in F'; the e_0-ball return-time set lands in
// F' plus {0}.
WagResult wag_weight(const IntSet& F, std::int64_t N, Side side = Side::Bilateral);

struct AdjointPair {
    WeightSeq w;
    WeightSeq v; // adjoint_reflect(w)
    BlockLayout layout;
    IntSet preprocessed;
};

// Mirrored layout from the adjoint construction: I/J blocks on the
// positive axis, their barred variants on the negative axis (extra 1 at
// the front of odd-length barred blocks), w_n * w_{-n} = 1 for n >= 1.
// Preprocessing drops 0 and 1 and intervals shorter than 3.
AdjointPair adjoint_pair_weight(const IntSet& F, std::int64_t N);

// Generalization of the two worked examples targeting
// "B + B^2 + ... + B^k weakly mixing, B + B^{k+1} not hypercyclic".
// Validated empirically on construction: flat peaks 2^n across
// [a_n, k*a_n] for n >= 2, and E(m) >= 1 implies E((k+1)m) = 0. A failed
// validation rejects the construction.
std::pair<WeightSeq, BlockLayout> experimental_k_chain_weight(int k, int depth);

// Margin kept past the horizon so window queries with small j stay in
// range.
constexpr std::int64_t kRangePad = 64;

} // namespace construct
} // namespace shiftlab
