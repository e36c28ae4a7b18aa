#include "construct.hpp"

#include "error.hpp"

#include <algorithm>

namespace shiftlab {
namespace construct {

namespace {

using Runs = std::vector<std::pair<std::int64_t, std::int64_t>>;

struct Builder {
    std::int64_t next = 0;
    std::vector<std::int64_t> exps;
    std::vector<Block> blocks;

    void block(std::string label, Runs runs) {
        Block b{std::move(label), next, std::move(runs)};
        for (const auto& [e, c] : b.runs) {
            for (std::int64_t i = 0; i < c; ++i) exps.push_back(e);
            next += c;
        }
        blocks.push_back(std::move(b));
    }
    void ones(std::string label, std::int64_t count) {
        if (count > 0) block(std::move(label), {{0, count}});
    }
};

// I-block: m twos then m halves (plus trailing 1 when odd).
Runs interval_block(std::int64_t len) {
    std::int64_t m = len / 2;
    Runs out{{1, m}, {-1, m}};
    if (len % 2) out.push_back({0, 1});
    return out;
}

// Barred I-block: leading 1 when odd, then m twos, m halves.
Runs interval_block_barred(std::int64_t len) {
    std::int64_t m = len / 2;
    Runs out;
    if (len % 2) out.push_back({0, 1});
    out.push_back({1, m});
    out.push_back({-1, m});
    return out;
}

// J-block (adjoint variant): m halves then m twos (trailing 1 when odd).
Runs gap_block(std::int64_t len) {
    if (len == 1) return {{0, 1}};
    std::int64_t m = len / 2;
    Runs out{{-1, m}, {1, m}};
    if (len % 2) out.push_back({0, 1});
    return out;
}

// Barred J-block: leading 1 when odd, then m halves, m twos.
Runs gap_block_barred(std::int64_t len) {
    if (len == 1) return {{0, 1}};
    std::int64_t m = len / 2;
    Runs out;
    if (len % 2) out.push_back({0, 1});
    out.push_back({-1, m});
    out.push_back({1, m});
    return out;
}

struct Preprocessed {
    Elems kept;
    Elems dropped;
    std::vector<Interval> intervals;
};

Preprocessed preprocess_for_wag(const IntSet& F, std::int64_t N, std::int64_t min_interval) {
    Elems elems = F.materialize(N);
    Elems trimmed;
    Preprocessed out;
    for (std::int64_t v : elems) {
        if (v == 0 || v == 1)
            out.dropped.push_back(v);
        else
            trimmed.push_back(v);
    }
    IntervalDecomposition decomp = decompose_elements(trimmed, N, min_interval);
    out.intervals = decomp.intervals;
    for (std::int64_t v : decomp.residue) out.dropped.push_back(v);
    std::sort(out.dropped.begin(), out.dropped.end());
    for (const Interval& iv : decomp.intervals)
        for (std::int64_t v = iv.lo; v <= iv.hi; ++v) out.kept.push_back(v);
    return out;
}

} // namespace

nlohmann::json BlockLayout::to_json() const {
    nlohmann::json blocks_json = nlohmann::json::array();
    for (const Block& b : blocks) {
        nlohmann::json runs = nlohmann::json::array();
        for (const auto& [e, c] : b.runs) runs.push_back({e, c});
        blocks_json.push_back({{"label", b.label}, {"start", b.start}, {"length", b.length()}, {"runs", runs}});
    }
    nlohmann::json recur = nlohmann::json::object();
    for (const auto& [name, values] : recurrences) recur[name] = values;
    return nlohmann::json{{"blocks", blocks_json},
                          {"recurrences", recur},
                          {"preprocessed_count", preprocessed.size()},
                          {"dropped", dropped},
                          {"structured_hi", structured_hi},
                          {"notes", notes}};
}

std::pair<WeightSeq, BlockLayout> example1_weight(int depth) {
    if (depth < 1) fail(ErrorCode::InvalidArgument, "example1_weight: depth must be >= 1");
    Elems b;
    b.push_back(2); // b_1
    for (int n = 1; n < depth; ++n) b.push_back(2 * b.back() + n + 2);

    Builder builder;
    builder.ones("B_1", 1);
    for (int n = 1; n <= depth; ++n) {
        builder.block("A_" + std::to_string(n), {{1, n}, {-n, 1}});
        builder.ones("B_b" + std::to_string(n), b[static_cast<std::size_t>(n - 1)]);
    }

    BlockLayout layout;
    layout.blocks = std::move(builder.blocks);
    layout.recurrences["b"] = b;
    layout.structured_hi = builder.next - 1;
    auto w = WeightSeq::dyadic(Side::Unilateral, 0, std::move(builder.exps));
    w.with_id("example1(depth=" + std::to_string(depth) + ")");
    return {std::move(w), std::move(layout)};
}

std::pair<WeightSeq, BlockLayout> example2_weight(int depth) {
    if (depth < 1) fail(ErrorCode::InvalidArgument, "example2_weight: depth must be >= 1");
    Elems s{1, 3};
    for (int n = 1; n < depth; ++n) s.push_back(2 * (3 * (s.back() - 1) + n + 1) + n);
    Elems a, b, c;
    for (int n = 1; n <= depth; ++n) {
        a.push_back(3 * (s[static_cast<std::size_t>(n - 1)] - 1) + n);
        b.push_back(s[static_cast<std::size_t>(n)] - 1 - a.back());
        c.push_back(2 * (s[static_cast<std::size_t>(n)] - 1) - 1);
    }

    Builder builder;
    builder.ones("C_1", 1);
    for (int n = 1; n <= depth; ++n) {
        builder.block("A_" + std::to_string(n), {{1, n}});
        builder.block("B_b" + std::to_string(n) + "," + std::to_string(n),
                      {{0, b[static_cast<std::size_t>(n - 1)]}, {-n, 1}});
        builder.ones("C_c" + std::to_string(n), c[static_cast<std::size_t>(n - 1)]);
    }

    BlockLayout layout;
    layout.blocks = std::move(builder.blocks);
    layout.recurrences["s"] = s;
    layout.recurrences["a"] = a;
    layout.recurrences["b"] = b;
    layout.recurrences["c"] = c;
    layout.structured_hi = builder.next - 1;
    auto w = WeightSeq::dyadic(Side::Unilateral, 0, std::move(builder.exps));
    w.with_id("example2(depth=" + std::to_string(depth) + ")");
    return {std::move(w), std::move(layout)};
}

std::pair<WeightSeq, BlockLayout> wag_weight_cofinite(std::int64_t L, std::int64_t horizon) {
    if (L < 0 || horizon < 1) fail(ErrorCode::InvalidArgument, "wag_weight_cofinite: L >= 0 and horizon >= 1 required");
    std::int64_t hi = horizon + kRangePad;
    std::int64_t lo = -hi;
    std::vector<std::int64_t> exps;
    exps.reserve(static_cast<std::size_t>(2 * hi + 1));
    BlockLayout layout;
    layout.blocks.push_back({"halves", lo, {{-1, hi}}});
    for (std::int64_t n = lo; n < 0; ++n) exps.push_back(-1);
    std::int64_t ones_len = std::min(L, hi + 1);
    if (ones_len > 0) {
        layout.blocks.push_back({"ones", 0, {{0, ones_len}}});
        for (std::int64_t i = 0; i < ones_len; ++i) exps.push_back(0);
    }
    if (L <= hi) {
        layout.blocks.push_back({"twos", L, {{1, hi - L + 1}}});
        for (std::int64_t n = L; n <= hi; ++n) exps.push_back(1);
    }
    layout.structured_hi = hi;
    layout.notes.push_back("cofinite tail from L=" + std::to_string(L));
    auto w = WeightSeq::dyadic(Side::Bilateral, lo, std::move(exps));
    w.with_id("case_a(L=" + std::to_string(L) + ")");
    return {std::move(w), std::move(layout)};
}

WagResult wag_weight(const IntSet& F, std::int64_t N, Side side) {
    Preprocessed pre = preprocess_for_wag(F, N, 2);
    if (pre.intervals.empty())
        fail(ErrorCode::Validation, "wag_weight: preprocessing left no interval of length >= 2 below the horizon");

    Builder builder;
    std::int64_t cursor = 0;
    int k = 0;
    for (const Interval& iv : pre.intervals) {
        ++k;
        if (iv.lo > cursor) builder.ones("J_" + std::to_string(k), iv.lo - cursor);
        builder.block("I_" + std::to_string(k), interval_block(iv.length()));
        cursor = iv.hi + 1;
    }
    std::int64_t hi = N + kRangePad;
    std::int64_t structured_hi = cursor - 1;
    if (cursor <= hi) builder.ones("J_tail", hi - cursor + 1);

    BlockLayout layout;
    layout.preprocessed = pre.kept;
    layout.dropped = pre.dropped;
    layout.structured_hi = structured_hi;
    layout.notes.push_back("preprocessing dropped {0,1} and maximal intervals shorter than 2; "
                           "family membership is preserved for shift-invariant full families at horizon level");

    WeightSeq w;
    if (side == Side::Bilateral) {
        std::vector<std::int64_t> exps(static_cast<std::size_t>(hi), -1); // indices -hi..-1
        layout.blocks.push_back({"halves", -hi, {{-1, hi}}});
        for (Block& b : builder.blocks) layout.blocks.push_back(b);
        exps.insert(exps.end(), builder.exps.begin(), builder.exps.end());
        w = WeightSeq::dyadic(Side::Bilateral, -hi, std::move(exps));
    } else {
        layout.blocks.insert(layout.blocks.begin(), builder.blocks.begin(), builder.blocks.end());
        w = WeightSeq::dyadic(Side::Unilateral, 0, std::move(builder.exps));
    }
    std::string fid = F.id().empty() ? "set" : F.id();
    w.with_id("wag(" + fid + ", N=" + std::to_string(N) + ", " + to_string(side) + ")");

    IntSet kept = IntSet::finite(pre.kept);
    kept.with_id(fid + "'");
    return {std::move(w), std::move(layout), std::move(kept)};
}

AdjointPair adjoint_pair_weight(const IntSet& F, std::int64_t N) {
    Preprocessed pre = preprocess_for_wag(F, N, 3);
    if (pre.intervals.empty())
        fail(ErrorCode::Validation, "adjoint_pair_weight: preprocessing left no interval of length >= 3 below the horizon");
    if (pre.intervals.front().lo < 2)
        fail(ErrorCode::Internal, "adjoint preprocessing must leave 0 and 1 outside F'");

    // Positive side: [1] at index 0, then J_1, I_1, J_2, I_2, ...
    Builder pos;
    pos.ones("e0", 1);
    std::int64_t cursor = 1;
    int k = 0;
    std::vector<std::pair<std::string, Runs>> barred;
    for (const Interval& iv : pre.intervals) {
        ++k;
        if (iv.lo > cursor) {
            std::int64_t len = iv.lo - cursor;
            pos.block("J_" + std::to_string(k), gap_block(len));
            barred.push_back({"Jbar_" + std::to_string(k), gap_block_barred(len)});
        }
        pos.block("I_" + std::to_string(k), interval_block(iv.length()));
        barred.push_back({"Ibar_" + std::to_string(k), interval_block_barred(iv.length())});
        cursor = iv.hi + 1;
    }
    std::int64_t hi = N + kRangePad;
    std::int64_t structured_hi = cursor - 1;
    if (cursor <= hi) {
        pos.block("J_tail", {{0, hi - cursor + 1}});
        barred.push_back({"Jbar_tail", {{0, hi - cursor + 1}}});
    }

    // Negative side, ascending indices: ...Ibar_2, Jbar_2, Ibar_1, Jbar_1;
    // the block mirroring positive range [a, b] occupies [-b, -a].
    std::vector<std::int64_t> exps;
    BlockLayout layout;
    std::int64_t lo = -hi;
    std::int64_t neg_cursor = lo;
    for (auto it = barred.rbegin(); it != barred.rend(); ++it) {
        Block blk{it->first, neg_cursor, it->second};
        for (const auto& [e, c] : blk.runs)
            for (std::int64_t i = 0; i < c; ++i) exps.push_back(e);
        neg_cursor += blk.length();
        layout.blocks.push_back(std::move(blk));
    }
    if (neg_cursor != 0) fail(ErrorCode::Internal, "adjoint layout: negative blocks do not tile down to index -1");
    for (Block& b : pos.blocks) layout.blocks.push_back(b);
    exps.insert(exps.end(), pos.exps.begin(), pos.exps.end());

    layout.preprocessed = pre.kept;
    layout.dropped = pre.dropped;
    layout.structured_hi = structured_hi;
    layout.notes.push_back("preprocessing dropped {0,1} and maximal intervals shorter than 3");

    auto w = WeightSeq::dyadic(Side::Bilateral, lo, std::move(exps));
    std::string fid = F.id().empty() ? "set" : F.id();
    w.with_id("adjoint_w(" + fid + ", N=" + std::to_string(N) + ")");

    // The displayed barred blocks must reproduce w_{-n} = 1/w_n exactly.
    for (std::int64_t n = 1; n <= hi; ++n)
        if (w.exponent_at(n) + w.exponent_at(-n) != 0)
            fail(ErrorCode::Internal, "adjoint layout: w(n)*w(-n) != 1 at n=" + std::to_string(n));

    WeightSeq v = adjoint_reflect(w);
    v.with_id("adjoint_v(" + fid + ", N=" + std::to_string(N) + ")");

    IntSet kept = IntSet::finite(pre.kept);
    kept.with_id(fid + "'");
    return {std::move(w), std::move(v), std::move(layout), std::move(kept)};
}

std::pair<WeightSeq, BlockLayout> experimental_k_chain_weight(int k, int depth) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "experimental_k_chain_weight: k must be >= 1");
    if (depth < 2) fail(ErrorCode::InvalidArgument, "experimental_k_chain_weight: depth must be >= 2");
    // s_0 = 1, s_1 = k+1, s_{n+1} = k((k+1)(s_n - 1) + n + 1) + n, with
    // a_n = (k+1)(s_{n-1} - 1) + n marking the top of the n-th growth zone.
    Elems s{1, k + 1};
    for (int n = 1; n < depth; ++n) s.push_back(static_cast<std::int64_t>(k) * ((k + 1) * (s.back() - 1) + n + 1) + n);
    Elems a, b, c;
    for (int n = 1; n <= depth; ++n) {
        a.push_back((k + 1) * (s[static_cast<std::size_t>(n - 1)] - 1) + n);
        b.push_back(s[static_cast<std::size_t>(n)] - 1 - a.back());
        c.push_back(static_cast<std::int64_t>(k) * (s[static_cast<std::size_t>(n)] - 1) - 1);
    }
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] < 0) fail(ErrorCode::Validation, "k-chain recurrence produced a negative B-block length");

    Builder builder;
    builder.ones("C_1", 1);
    for (int n = 1; n <= depth; ++n) {
        builder.block("A_" + std::to_string(n), {{1, n}});
        builder.block("B_" + std::to_string(n), {{0, b[static_cast<std::size_t>(n - 1)]}, {-n, 1}});
        builder.ones("C_" + std::to_string(n), c[static_cast<std::size_t>(n - 1)]);
    }

    auto w = WeightSeq::dyadic(Side::Unilateral, 0, std::move(builder.exps));
    w.with_id("k_chain(k=" + std::to_string(k) + ", depth=" + std::to_string(depth) + ") [experimental]");
    ProductTable table = ProductTable::build(w);
    std::int64_t hi = table.hi();

    // Empirical validation gate 1: flat peaks 2^n across [a_n, k*a_n] for n >= 2.
    for (int n = 2; n <= depth; ++n) {
        std::int64_t an = a[static_cast<std::size_t>(n - 1)];
        for (int p = 1; p <= k; ++p) {
            if (p * an > hi) break;
            if (table.exponent(p * an) != n)
                fail(ErrorCode::Validation, "k-chain validation: product at " + std::to_string(p) + "*a_" +
                                                std::to_string(n) + " is 2^" + std::to_string(table.exponent(p * an)) +
                                                ", expected 2^" + std::to_string(n));
        }
    }
    // Empirical validation gate 2: products >= 2 die at the (k+1)-fold index.
    for (std::int64_t m = 1; (k + 1) * m <= hi; ++m)
        if (table.exponent(m) >= 1 && table.exponent((k + 1) * m) != 0)
            fail(ErrorCode::Validation, "k-chain validation: joint (1," + std::to_string(k + 1) +
                                            ") return condition violated at m=" + std::to_string(m));

    BlockLayout layout;
    layout.blocks = std::move(builder.blocks);
    layout.recurrences["s"] = s;
    layout.recurrences["a"] = a;
    layout.recurrences["b"] = b;
    layout.recurrences["c"] = c;
    layout.structured_hi = hi;
    layout.notes.push_back("experimental generalization; accepted only because the empirical product checks passed");
    return {std::move(w), std::move(layout)};
}

} // namespace construct
} // namespace shiftlab
