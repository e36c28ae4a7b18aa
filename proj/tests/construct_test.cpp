#include <doctest.h>

#include "catalog.hpp"
#include "construct.hpp"
#include "error.hpp"

using namespace shiftlab;
using namespace shiftlab::construct;

namespace {

void check_tiling(const BlockLayout& layout, std::int64_t lo, std::int64_t hi) {
    REQUIRE(!layout.blocks.empty());
    std::int64_t cursor = lo;
    for (const Block& b : layout.blocks) {
        CHECK(b.start == cursor);
        cursor += b.length();
    }
    CHECK(cursor - 1 == hi);
}

} // namespace

TEST_CASE("example1 recurrence and prefix") {
    auto [w, layout] = example1_weight(8);
    const Elems& b = layout.recurrences.at("b");
    CHECK(b == Elems{2, 7, 18, 41, 88, 183, 374, 757});
    CHECK(w.hi() == 2 * b.back());
    check_tiling(layout, 0, w.hi());

    // w_0..w_7 = 1, 2, 1/2, 1, 1, 2, 2, 1/4
    Elems prefix_exps{0, 1, -1, 0, 0, 1, 1, -2};
    for (std::int64_t n = 0; n <= 7; ++n) CHECK(w.exponent_at(n) == prefix_exps[static_cast<std::size_t>(n)]);

    // Block lengths tile to 2 b_n after each stage.
    ProductTable table = ProductTable::build(w);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(table.exponent(2 * b[i]) == 0);
}

TEST_CASE("example1 product rule: large products die at the doubled index") {
    auto [w, layout] = example1_weight(6);
    ProductTable table = ProductTable::build(w);
    std::int64_t hi = table.hi();
    bool saw_large = false;
    for (std::int64_t k = 1; 2 * k <= hi; ++k) {
        if (table.exponent(k) >= 1) {
            saw_large = true;
            CHECK(table.exponent(2 * k) == 0);
        }
    }
    CHECK(saw_large);
    // Flat zones: products are exactly 1 on [b_n, 2 b_n].
    for (std::int64_t bn : layout.recurrences.at("b"))
        for (std::int64_t k = bn; k <= 2 * bn; ++k) CHECK(table.exponent(k) == 0);
}

TEST_CASE("example2 recurrences and marked products") {
    auto [w, layout] = example2_weight(8);
    const Elems& s = layout.recurrences.at("s");
    const Elems& a = layout.recurrences.at("a");
    CHECK(s[0] == 1);
    CHECK(s[1] == 3);
    CHECK(s[2] == 17);
    CHECK(s[3] == 104);
    CHECK(a[0] == 1);
    CHECK(a[1] == 8);
    CHECK(a[2] == 51);
    CHECK(w.hi() == 3 * (s.back() - 1));
    check_tiling(layout, 0, w.hi());

    // w_{s_n} = 2^{-n}
    for (std::size_t n = 1; n < s.size(); ++n)
        CHECK(w.exponent_at(s[n]) == -static_cast<std::int64_t>(n));

    ProductTable table = ProductTable::build(w);
    CHECK(table.exponent(a[1]) == 2);
    CHECK(table.exponent(2 * a[1]) == 2);
    for (std::size_t n = 2; n < a.size(); ++n) {
        if (2 * a[n] > table.hi()) break;
        CHECK(table.exponent(a[n]) == static_cast<std::int64_t>(n + 1));
        CHECK(table.exponent(2 * a[n]) == static_cast<std::int64_t>(n + 1));
    }
}

TEST_CASE("example2 product rule: large products die at the tripled index") {
    auto [w, layout] = example2_weight(5);
    ProductTable table = ProductTable::build(w);
    std::int64_t hi = table.hi();
    bool saw_large = false;
    for (std::int64_t k = 1; 3 * k <= hi; ++k) {
        if (table.exponent(k) >= 1) {
            saw_large = true;
            CHECK(table.exponent(3 * k) == 0);
        }
    }
    CHECK(saw_large);
}

TEST_CASE("cofinite-set weight") {
    auto [w0, l0] = wag_weight_cofinite(0, 30);
    for (std::int64_t n = 0; n <= 30; ++n) CHECK(w0.exponent_at(n) == 1);
    for (std::int64_t n = -30; n < 0; ++n) CHECK(w0.exponent_at(n) == -1);

    auto [w3, l3] = wag_weight_cofinite(3, 30);
    ProductTable t = ProductTable::build(w3);
    CHECK(t.exponent(3) == 1);
    CHECK(t.exponent(4) == 2);
    CHECK(t.backward(0, 5) == Rat::pow2(-4)); // w_0 = 1, four halves below
    check_tiling(l3, w3.lo(), w3.hi());
}

TEST_CASE("interval/gap weight for thick_powers2") {
    IntSet F = example_set_catalog("thick_powers2");
    WagResult wag = wag_weight(F, 100);
    check_tiling(wag.layout, wag.w.lo(), wag.w.hi());

    // First maximal interval is [2,6] (the generator intervals [2,3] and
    // [4,6] are adjacent), an odd block: 2,2,1/2,1/2,1.
    Elems first_exps{0, 0, 1, 1, -1, -1, 0};
    for (std::int64_t n = 0; n <= 6; ++n) CHECK(wag.w.exponent_at(n) == first_exps[static_cast<std::size_t>(n)]);

    ProductTable table = ProductTable::build(wag.w);
    CHECK(table.exponent(9) == 2);  // {8..11} inside F'
    CHECK(table.exponent(7) == 0);  // 7 outside F'
    CHECK(table.exponent(34) == 3); // deepest point of [32,37]

    // Preprocessing keeps every maximal interval of length >= 2 here.
    CHECK(wag.preprocessed.materialize(100) == F.materialize(100));
    CHECK(wag.layout.dropped.empty());

    // Unilateral variant shares the non-negative exponents.
    WagResult uni = wag_weight(F, 100, Side::Unilateral);
    for (std::int64_t n = 0; n <= uni.w.hi(); ++n) CHECK(uni.w.exponent_at(n) == wag.w.exponent_at(n));
}

TEST_CASE("interval/gap weight preprocessing") {
    IntSet F = IntSet::finite({0, 1, 5, 7, 8, 20});
    WagResult wag = wag_weight(F, 50);
    CHECK(wag.preprocessed.materialize(50) == Elems{7, 8});
    CHECK(wag.layout.dropped == Elems{0, 1, 5, 20});

    CHECK_THROWS_AS(wag_weight(IntSet::finite({3, 10, 12}), 50), Error); // no interval of length 2
}

TEST_CASE("adjoint pair construction") {
    IntSet F = example_set_catalog("thick_powers2");
    AdjointPair pair = adjoint_pair_weight(F, 200);
    check_tiling(pair.layout, pair.w.lo(), pair.w.hi());
    for (std::int64_t n = 1; n <= 200; ++n) CHECK(pair.w.exponent_at(n) + pair.w.exponent_at(-n) == 0);
    CHECK(pair.w.exponent_at(0) == 0);

    // v is the reflection; reflecting twice restores w.
    WeightSeq back = adjoint_reflect(pair.v);
    for (std::int64_t n = -150; n <= 150; ++n) CHECK(back.exponent_at(n) == pair.w.exponent_at(n));

    // Explicit small layout: F' = {4,5,6} + {10..13}.
    AdjointPair small = adjoint_pair_weight(IntSet::finite({4, 5, 6, 10, 11, 12, 13}), 20);
    // J_1 on [1,3]: 1/2, 2, 1; I_1 on [4,6]: 2, 1/2, 1; J_2 on [7,9];
    // I_2 on [10,13]: 2, 2, 1/2, 1/2.
    Elems pos{0, -1, 1, 0, 1, -1, 0, -1, 1, 0, 1, 1, -1, -1};
    for (std::int64_t n = 0; n <= 13; ++n) CHECK(small.w.exponent_at(n) == pos[static_cast<std::size_t>(n)]);
    for (std::int64_t n = 1; n <= 20; ++n) CHECK(small.w.exponent_at(-n) == -small.w.exponent_at(n));

    CHECK_THROWS_AS(adjoint_pair_weight(IntSet::finite({4, 5, 9, 10}), 50), Error); // intervals shorter than 3
}

TEST_CASE("experimental k-chain generalization") {
    // k = 2 must coincide with the second worked example.
    auto [kw, klayout] = experimental_k_chain_weight(2, 5);
    auto [e2, e2layout] = example2_weight(5);
    REQUIRE(kw.hi() == e2.hi());
    for (std::int64_t n = 0; n <= kw.hi(); ++n) CHECK(kw.exponent_at(n) == e2.exponent_at(n));

    // k = 1 reproduces the first example's verified properties (not its
    // exact layout): large products die at the doubled index and the
    // single-operator products still peak.
    auto [k1, l1] = experimental_k_chain_weight(1, 6);
    ProductTable t1 = ProductTable::build(k1);
    bool saw = false;
    for (std::int64_t m = 1; 2 * m <= t1.hi(); ++m)
        if (t1.exponent(m) >= 1) {
            saw = true;
            CHECK(t1.exponent(2 * m) == 0);
        }
    CHECK(saw);
    CHECK(l1.recurrences.at("a").size() == 6);

    // k = 3: flat peaks across [a_n, 3 a_n] and joint (1,4) emptiness,
    // validated internally; spot-check the peak values.
    auto [k3, l3] = experimental_k_chain_weight(3, 5);
    ProductTable t3 = ProductTable::build(k3);
    const Elems& a3 = l3.recurrences.at("a");
    for (std::size_t n = 2; n < a3.size(); ++n) {
        if (3 * a3[n] > t3.hi()) break;
        CHECK(t3.exponent(a3[n]) == static_cast<std::int64_t>(n + 1));
        CHECK(t3.exponent(2 * a3[n]) == static_cast<std::int64_t>(n + 1));
        CHECK(t3.exponent(3 * a3[n]) == static_cast<std::int64_t>(n + 1));
    }
    check_tiling(l3, 0, k3.hi());
}
