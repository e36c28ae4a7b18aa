#include <doctest.h>

#include "catalog.hpp"
#include "error.hpp"
#include "intset.hpp"
#include "setlang.hpp"

#include <algorithm>

using namespace shiftlab;

namespace {

// Independent enumeration of the union of [2^n, 2^n + n].
Elems thick_powers2_oracle(std::int64_t horizon) {
    Elems out;
    for (std::int64_t n = 1;; ++n) {
        std::int64_t lo = std::int64_t{1} << n;
        if (lo > horizon) break;
        for (std::int64_t v = lo; v <= std::min(lo + n, horizon); ++v) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IntSet evens() { return IntSet::arithmetic_grid(2, {0}); }
IntSet naturals() { return IntSet::arithmetic_grid(1, {0}); }

} // namespace

TEST_CASE("interval-union materialization matches direct enumeration") {
    IntSet F = example_set_catalog("thick_powers2");
    CHECK(F.materialize(40) == Elems{2, 3, 4, 5, 6, 8, 9, 10, 11, 16, 17, 18, 19, 20, 32, 33, 34, 35, 36, 37});
    for (std::int64_t horizon : {0, 1, 7, 100, 1000}) CHECK(F.materialize(horizon) == thick_powers2_oracle(horizon));
}

TEST_CASE("empty finite set") { CHECK(IntSet::finite({}).materialize(100).empty()); }

TEST_CASE("finite sums of powers of ten") {
    IntSet fs = example_set_catalog("fs_tens");
    CHECK(fs.materialize(1000) == Elems{10, 100, 110, 1000});
    // Brute force over index subsets of {10, 100, 1000}.
    Elems oracle;
    for (int mask = 1; mask < 8; ++mask) {
        std::int64_t s = 0;
        if (mask & 1) s += 10;
        if (mask & 2) s += 100;
        if (mask & 4) s += 1000;
        if (s <= 1000) oracle.push_back(s);
    }
    std::sort(oracle.begin(), oracle.end());
    CHECK(fs.materialize(1000) == oracle);
}

TEST_CASE("shift combinator") {
    IntSet F = example_set_catalog("thick_powers2");
    CHECK(F.shifted(0).materialize(50) == F.materialize(50));
    CHECK(IntSet::finite({2, 3}).shifted(-2).materialize(10) == Elems{0, 1});
    CHECK(F.shifted(1).materialize(10) == Elems{3, 4, 5, 6, 7, 9, 10});
    // Negative shift clips below zero.
    CHECK(F.shifted(-3).materialize(5) == Elems{0, 1, 2, 3, 5});
}

TEST_CASE("difference sets") {
    CHECK(IntSet::finite({0, 10, 100, 110}).difference_set(200).materialize(200) == Elems{10, 90, 100, 110});
    CHECK(IntSet::finite({5}).difference_set(100).materialize(100).empty());
    CHECK(evens().difference_set(10).materialize(10) == Elems{2, 4, 6, 8, 10});
    // 0 is never a difference.
    Elems diffs = example_set_catalog("thick_powers2").difference_set(100).materialize(100);
    CHECK(!std::binary_search(diffs.begin(), diffs.end(), 0));
}

TEST_CASE("interval decomposition") {
    // [2,3] and [4,6] are adjacent, so the maximal intervals merge.
    auto d = interval_decompose(example_set_catalog("thick_powers2"), 11);
    CHECK(d.intervals == std::vector<Interval>{{2, 6}, {8, 11}});
    CHECK(d.last_truncated);
    CHECK(d.residue.empty());

    CHECK(interval_decompose(IntSet::finite({}), 10).intervals.empty());

    auto isolated = interval_decompose(IntSet::finite({0, 2, 4}), 4);
    CHECK(isolated.intervals == std::vector<Interval>{{0, 0}, {2, 2}, {4, 4}});
    CHECK(isolated.last_truncated);

    auto inner = interval_decompose(example_set_catalog("thick_powers2"), 12);
    CHECK(!inner.last_truncated);

    // min-length cutoff routes short intervals to the residue.
    auto cut = decompose_elements({0, 2, 3, 7, 8, 9}, 20, 2);
    CHECK(cut.intervals == std::vector<Interval>{{2, 3}, {7, 9}});
    CHECK(cut.residue == Elems{0});
}

TEST_CASE("catalog sets") {
    CHECK(example_set_catalog("grid(2)").materialize(40) == Elems{18, 19, 36, 37});
    CHECK(example_set_catalog("complement_powers2").materialize(10) == Elems{0, 1, 3, 5, 6, 7, 9, 10});
    CHECK_THROWS_AS(example_set_catalog("no_such_set"), Error);

    // grid(n) excludes the k = 0 block.
    Elems g3 = example_set_catalog("grid(3)").materialize(200);
    CHECK(g3.front() == 81);
    CHECK(g3 == Elems{81, 82, 83, 162, 163, 164});

    // grid_union at a small horizon: grids 1 and 2 contribute.
    Elems gu = example_set_catalog("grid_union").materialize(60);
    Elems expected;
    for (std::int64_t k = 1; 3 * k <= 60; ++k) expected.push_back(3 * k);
    for (std::int64_t k = 1; 18 * k <= 60; ++k) {
        expected.push_back(18 * k);
        expected.push_back(18 * k + 1);
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(gu == expected);
}

TEST_CASE("salas growth sequence and its sets") {
    Elems s = salas_growth_sequence();
    REQUIRE(s.size() >= 5);
    CHECK(s[0] == 5);
    CHECK(s[1] == 25);
    CHECK(s[2] == 129);
    CHECK(s[3] == 649);
    CHECK(s[4] == 3249);
    // Strict growth requirement: s_{n+1} > 4 (sum + n).
    std::int64_t sum = 0;
    for (std::size_t n = 0; n + 1 < s.size(); ++n) {
        sum += s[n];
        CHECK(s[n + 1] > 4 * (sum + static_cast<std::int64_t>(n + 1)));
    }

    // salas_fs = complement of the finite sums.
    Elems fs_oracle{5, 25, 30, 129, 134, 154, 159};
    Elems got = example_set_catalog("salas_fs").materialize(200);
    Elems expect;
    std::size_t fs_idx = 0;
    for (std::int64_t v = 0; v <= 200; ++v) {
        if (fs_idx < fs_oracle.size() && fs_oracle[fs_idx] == v)
            ++fs_idx;
        else
            expect.push_back(v);
    }
    CHECK(got == expect);

    // salas_diff = complement of the realized differences (only 25-5 fits
    // below 100).
    Elems sd = example_set_catalog("salas_diff").materialize(100);
    Elems sd_expect;
    for (std::int64_t v = 0; v <= 100; ++v)
        if (v != 20) sd_expect.push_back(v);
    CHECK(sd == sd_expect);
}

TEST_CASE("prefix monotonicity across rule kinds") {
    std::vector<IntSet> sets{example_set_catalog("thick_powers2"),
                             example_set_catalog("fs_tens"),
                             example_set_catalog("salas_diff"),
                             example_set_catalog("grid_union"),
                             example_set_catalog("complement_fs_tens"),
                             evens().shifted(3),
                             naturals().complemented().complemented()};
    for (const IntSet& s : sets) {
        Elems big = s.materialize(500);
        Elems small = s.materialize(137);
        Elems clipped;
        for (std::int64_t v : big)
            if (v <= 137) clipped.push_back(v);
        CHECK(small == clipped);
    }
}

TEST_CASE("complement is an involution") {
    IntSet F = example_set_catalog("thick_powers2");
    CHECK(F.complemented().complemented().materialize(300) == F.materialize(300));
}

TEST_CASE("malformed rules are rejected with diagnostics") {
    // lo(n) never passes the horizon.
    IntSet stuck = IntSet::interval_union(SetExpr::parse("5"), SetExpr::parse("6"), 1);
    CHECK_THROWS_AS(stuck.materialize(100), Error);
    // Generator cap reached while generators still fit.
    IntSet dense = IntSet::finite_sums(SetExpr::parse("n"), 20);
    CHECK_THROWS_AS(dense.materialize(100), Error);
    // Decreasing generator sequence (first terms below the horizon).
    IntSet dec = IntSet::finite_sums(SetExpr::parse("100 - n"), 20);
    CHECK_THROWS_AS(dec.materialize(150), Error);
}

TEST_CASE("set description grammar") {
    const char* text = R"(# worked catalog and combinators
F = catalog(thick_powers2)
G = intervals(n from 1: [2^n, 2^n + n])
H = grid(mod=18, residues={0,1}, min=18)
S = finitesums(10^n)
T = shift(F, -2)
C = complement(G)
U = union(F, H)
I = intersect(F, complement(H))
D = diffset(finite{0,10,100,110}, within=200)
)";
    ParsedSets sets = parse_set_description(text);
    CHECK(sets.order.size() == 9);
    CHECK(sets.by_name.at("F").materialize(40) == sets.by_name.at("G").materialize(40));
    CHECK(sets.by_name.at("H").materialize(40) == Elems{18, 19, 36, 37});
    CHECK(sets.by_name.at("S").materialize(1000) == Elems{10, 100, 110, 1000});
    CHECK(sets.by_name.at("T").materialize(5) == Elems{0, 1, 2, 3, 4});
    CHECK(sets.by_name.at("D").materialize(200) == Elems{10, 90, 100, 110});
    Elems u = sets.by_name.at("U").materialize(40);
    CHECK(std::binary_search(u.begin(), u.end(), 18));
    CHECK(std::binary_search(u.begin(), u.end(), 2));
    Elems inter = sets.by_name.at("I").materialize(40);
    Elems f_minus_h;
    for (std::int64_t v : sets.by_name.at("F").materialize(40))
        if (v != 18 && v != 19 && v != 36 && v != 37) f_minus_h.push_back(v);
    CHECK(inter == f_minus_h);
    CHECK(parse_set_selection(text, "").materialize(200) == Elems{10, 90, 100, 110});
    CHECK(parse_set_selection(text, "H").materialize(40) == Elems{18, 19, 36, 37});

    CHECK_THROWS_AS(parse_set_description("X = unknown_rule(3)"), Error);
    CHECK_THROWS_AS(parse_set_description("X = finite{1,2} trailing"), Error);
    CHECK_THROWS_AS(parse_set_description("X = shift(Y, 1)"), Error);
    CHECK_THROWS_AS(parse_set_description("X = finite{1}\nX = finite{2}"), Error);
}

TEST_CASE("symbolic disjointness certificates") {
    IntSet fs = example_set_catalog("fs_tens");
    IntSet comp = example_set_catalog("complement_fs_tens");
    CHECK(fs.symbolically_disjoint_from(comp));
    CHECK(comp.symbolically_disjoint_from(fs));
    IntSet other = example_set_catalog("thick_powers2");
    CHECK(!fs.symbolically_disjoint_from(other));
    // Structural complement without catalog ids.
    IntSet raw = IntSet::finite({1, 2, 3});
    CHECK(raw.complemented().symbolically_disjoint_from(raw));
}

TEST_CASE("dense difference sets use the packed sweep") {
    // A dense base beyond the pairwise cutoff: all integers in [0, 6000]
    // except multiples of 7. Oracle: d is realized unless every pair at
    // distance d straddles the deleted residue, which never happens here,
    // so the difference set is all of [1, 60].
    Elems base;
    for (std::int64_t v = 0; v <= 6000; ++v)
        if (v % 7) base.push_back(v);
    IntSet dense = IntSet::finite(base);
    Elems diffs = dense.difference_set(6000).materialize(60);
    Elems expect;
    for (std::int64_t d = 1; d <= 60; ++d) expect.push_back(d);
    CHECK(diffs == expect);

    // Sparse structured base, same path: multiples of 1000 only realize
    // multiples of 1000.
    Elems grid;
    for (std::int64_t v = 0; v <= 5000000; v += 1000) grid.push_back(v);
    IntSet coarse = IntSet::finite(grid);
    CHECK(coarse.difference_set(5000000).materialize(2500) == Elems{1000, 2000});
}
