#include <doctest.h>

#include "catalog.hpp"
#include "dynamics.hpp"
#include "error.hpp"

#include <algorithm>

using namespace shiftlab;

namespace {

WeightSeq split_sign(std::int64_t radius) {
    std::vector<std::int64_t> exps;
    for (std::int64_t n = -radius; n <= radius; ++n) exps.push_back(n >= 1 ? 1 : -1);
    return WeightSeq::dyadic(Side::Bilateral, -radius, std::move(exps));
}

WeightSeq all_ones(Side side, std::int64_t radius) {
    std::int64_t lo = side == Side::Unilateral ? 0 : -radius;
    std::vector<std::int64_t> exps(static_cast<std::size_t>(radius - lo) + 1, 0);
    return WeightSeq::dyadic(side, lo, std::move(exps));
}

WeightSeq constant2(std::int64_t radius) {
    return WeightSeq::dyadic(Side::Unilateral, 0, std::vector<std::int64_t>(static_cast<std::size_t>(radius) + 1, 1));
}

Elems range_from(std::int64_t lo, std::int64_t hi) {
    Elems out;
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

} // namespace

TEST_CASE("bes window sets") {
    auto sets = dynamics::bes_sets(split_sign(40), Rat(3), 0, 20);
    CHECK(sets.A == range_from(2, 20));
    CHECK(sets.Abar == range_from(2, 20));

    auto trivial = dynamics::bes_sets(all_ones(Side::Bilateral, 40), Rat(1), 3, 20);
    CHECK(trivial.A.empty());   // products equal 1, never > 1
    CHECK(trivial.Abar.empty());

    CHECK_THROWS_AS(dynamics::bes_sets(constant2(10), Rat(2), 0, 5), Error); // unilateral
    CHECK_THROWS_AS(dynamics::bes_sets(split_sign(10), Rat(2), 5, 10), Error); // range shortfall
}

TEST_CASE("E-set formation") {
    IntSet naturals = IntSet::arithmetic_grid(1, {0});
    // F = N_0: E = [q+j+1, N].
    CHECK(dynamics::wag_E_set(naturals, 2, 1, 30).materialize(30) == range_from(4, 30));

    IntSet F = example_set_catalog("thick_powers2");
    // Window [m-3, m+3] needs 7 consecutive members: none below 40, the
    // first at the middle of [64, 70].
    CHECK(dynamics::wag_E_set(F, 1, 1, 40).materialize(40).empty());
    CHECK(dynamics::wag_E_set(F, 1, 1, 100).materialize(100) == Elems{67});

    // E is always inside F.
    Elems E = dynamics::wag_E_set(F, 0, 0, 300).materialize(300);
    Elems FM = F.materialize(300);
    CHECK(std::includes(FM.begin(), FM.end(), E.begin(), E.end()));
}

TEST_CASE("wag inclusion check") {
    IntSet F = example_set_catalog("thick_powers2");
    auto wag = construct::wag_weight(F, 2000);
    Verdict v = dynamics::check_wag_inclusion(wag.w, F, Rat(4), 3, 2000);
    CHECK(v.status == Status::Witnessed);

    Verdict v2 = dynamics::check_wag_inclusion(wag.w, F, Rat(10), 1, 2000);
    CHECK(v2.status == Status::Witnessed);
    CHECK(v2.witness.at("E_size").get<std::int64_t>() == 0); // 13-windows only appear above 4096

    // At horizon 10^4 the (10,1) E-set is inhabited; corrupting one
    // weight inside it must flip the verdict.
    auto big = construct::wag_weight(F, 10000);
    Verdict ok = dynamics::check_wag_inclusion(big.w, F, Rat(10), 1, 10000);
    CHECK(ok.status == Status::Witnessed);
    CHECK(ok.witness.at("E_size").get<std::int64_t>() == 3);

    // M below 1 with j = 0 still picks q >= 1 and witnesses when the
    // E-set is inhabited.
    Verdict small_m = dynamics::check_wag_inclusion(wag.w, F, Rat::parse("1/2"), 0, 2000);
    CHECK(small_m.status == Status::Witnessed);
    CHECK(small_m.witness.at("q").get<std::int64_t>() == 1);
    CHECK(small_m.witness.at("E_size").get<std::int64_t>() > 0);

    std::vector<std::int64_t> exps;
    for (std::int64_t n = big.w.lo(); n <= big.w.hi(); ++n) exps.push_back(big.w.exponent_at(n));
    exps[static_cast<std::size_t>(4100 - big.w.lo())] = -5; // inside [4096, 4108]
    WeightSeq corrupted = WeightSeq::dyadic(Side::Bilateral, big.w.lo(), std::move(exps));
    Verdict bad = dynamics::check_wag_inclusion(corrupted, F, Rat(10), 1, 10000);
    CHECK(bad.status == Status::Refuted);
    CHECK(bad.witness.at("violating_m").get<std::int64_t>() == 4102);
}

TEST_CASE("direct sums of return times") {
    // A single factor reproduces the e0-ball report member for member.
    WeightSeq w = constant2(60);
    auto single = dynamics::direct_sum_return_times({{w, 1}}, SpaceKind::c0(Side::Unilateral), Rat::parse("1/3"), 30);
    auto ball = return_time_e0_ball(w, SpaceKind::c0(Side::Unilateral), Rat::parse("1/3"), 30);
    CHECK(single.members == ball.members);
    CHECK(single.members == [] {
        Elems e{0};
        for (std::int64_t m = 2; m <= 30; ++m) e.push_back(m);
        return e;
    }());

    // First worked example at depth 5: joint (1,2) returns only at 0.
    auto [e1, layout] = construct::example1_weight(5);
    std::int64_t b5 = layout.recurrences.at("b").back();
    auto joint =
        dynamics::direct_sum_return_times({{e1, 1}, {e1, 2}}, SpaceKind::c0(Side::Unilateral), Rat::parse("1/3"), b5);
    CHECK(joint.members == Elems{0});

    // Second worked example at depth 5: joint (1,2) is inhabited while
    // joint (1,3) is empty.
    auto [e2, layout2] = construct::example2_weight(5);
    std::int64_t s5 = layout2.recurrences.at("s").back();
    auto j12 = dynamics::direct_sum_return_times({{e2, 1}, {e2, 2}}, SpaceKind::c0(Side::Unilateral),
                                                 Rat::parse("1/3"), s5 / 2);
    CHECK(j12.members.size() > 1);
    auto j13 = dynamics::direct_sum_return_times({{e2, 1}, {e2, 3}}, SpaceKind::c0(Side::Unilateral),
                                                 Rat::parse("1/3"), s5 / 3);
    CHECK(j13.members == Elems{0});
}

TEST_CASE("salas unilateral ladder") {
    // Constant 2: rung t is reached exactly at n = t.
    Verdict v = dynamics::salas_unilateral_check(constant2(100), constant2(100), 100, 6);
    CHECK(v.status == Status::Witnessed);
    CHECK(v.witness.at("sup_exponent").get<std::int64_t>() == 100);
    auto rungs = v.witness.at("rungs");
    for (int t = 1; t <= 6; ++t) {
        CHECK(rungs[t - 1].at("reached") == true);
        CHECK(rungs[t - 1].at("at").get<std::int64_t>() == t);
    }

    // example1: rung t is first reached at the top of growth zone t,
    // index 2 b_{t-1} + t (with b_0 = 0).
    auto [e1, layout] = construct::example1_weight(6);
    Verdict ladder = dynamics::salas_unilateral_check(e1, e1, e1.hi(), 6);
    const Elems& b = layout.recurrences.at("b");
    Elems expected_at{1, 6, 17, 40, 87, 182};
    for (int t = 1; t <= 6; ++t) {
        CHECK(ladder.witness.at("rungs")[t - 1].at("at").get<std::int64_t>() == expected_at[t - 1]);
        if (t >= 2) CHECK(expected_at[t - 1] == 2 * b[static_cast<std::size_t>(t - 2)] + t);
    }

    // Disjointly supported interval weights never get jointly large.
    IntSet F = example_set_catalog("thick_powers2");
    auto wag1 = construct::wag_weight(F, 2000, Side::Unilateral);
    auto wag2 = construct::wag_weight(F.complemented(), 2000, Side::Unilateral);
    Verdict flat = dynamics::salas_unilateral_check(wag1.w, wag2.w, 2000, 4);
    CHECK(flat.status == Status::Unknown);
    CHECK(flat.witness.at("sup_exponent").get<std::int64_t>() == 0);

    // Running sup is nondecreasing in the horizon.
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t N : {20, 60, 120, 240, 360}) {
        Verdict step = dynamics::salas_unilateral_check(e1, e1, N, 3);
        std::int64_t sup = step.witness.at("sup_exponent").get<std::int64_t>();
        CHECK(sup >= last);
        last = sup;
    }
}

TEST_CASE("salas bilateral search") {
    auto [ca, layout] = construct::wag_weight_cofinite(0, 60);
    Verdict v = dynamics::salas_bilateral_check(ca, ca, Rat::parse("1/8"), 2, 40);
    CHECK(v.status == Status::Witnessed);
    CHECK(v.witness.at("n").get<std::int64_t>() == 10);

    Verdict ones = dynamics::salas_bilateral_check(all_ones(Side::Bilateral, 80), all_ones(Side::Bilateral, 80),
                                                   Rat::parse("1/2"), 1, 40);
    CHECK(ones.status == Status::Unknown);

    IntSet F = example_set_catalog("thick_powers2");
    auto wag1 = construct::wag_weight(F, 400);
    auto wag2 = construct::wag_weight(F.complemented(), 400);
    Verdict dis = dynamics::salas_bilateral_check(wag1.w, wag2.w, Rat::parse("1/2"), 0, 300);
    CHECK(dis.status == Status::Unknown);
}

TEST_CASE("joint basis norm check") {
    // All-ones weight: every norm is 1, the C-set is empty.
    NormSeq ones = conjugate_basis_norms(all_ones(Side::Unilateral, 60), SpaceKind::c0(Side::Unilateral), 0, 60);
    auto res = dynamics::joint_basis_norm_check({ones}, Side::Unilateral, Rat::parse("1/2"), 2,
                                                FamilyPredicate::parse("nonempty"), 40);
    CHECK(res.set.materialize(40).empty());
    CHECK(res.verdict.status == Status::Refuted);

    // Cofinite-tail weight: C-set is the tail {n >= 8} for eps = 1/8,
    // window 2.
    auto [ca, layout] = construct::wag_weight_cofinite(0, 80);
    NormSeq ns = conjugate_basis_norms(ca, SpaceKind::c0(Side::Bilateral), -80, 80);
    auto res2 = dynamics::joint_basis_norm_check({ns}, Side::Bilateral, Rat::parse("1/8"), 2,
                                                 FamilyPredicate::parse("cofinite"), 60);
    CHECK(res2.set.materialize(60) == [] {
        Elems e;
        for (std::int64_t n = 8; n <= 60; ++n) e.push_back(n);
        return e;
    }());
    CHECK(res2.verdict.status == Status::Witnessed);

    // Norm-product duality: n in C_{eps,0} iff the forward product
    // exceeds 1/eps.
    auto [e1, l1] = construct::example1_weight(5);
    ProductTable t1 = ProductTable::build(e1);
    NormSeq n1 = conjugate_basis_norms(e1, SpaceKind::c0(Side::Unilateral), 0, e1.hi());
    auto res3 = dynamics::joint_basis_norm_check({n1}, Side::Unilateral, Rat::parse("1/2"), 0,
                                                 FamilyPredicate::parse("nonempty"), 100);
    Elems expect;
    for (std::int64_t n = 0; n <= 100; ++n)
        if (t1.exponent(n) >= 2) expect.push_back(n); // product > 2
    CHECK(res3.set.materialize(100) == expect);
}

TEST_CASE("diagonal extraction of the disjointness sequence") {
    auto [ca, layout] = construct::wag_weight_cofinite(0, 120);
    NormSeq ns = conjugate_basis_norms(ca, SpaceKind::c0(Side::Bilateral), -120, 120);
    Elems seq = dynamics::extract_disjointness_sequence({ns}, Side::Bilateral, 5, 100);
    REQUIRE(seq.size() == 5);
    for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] > seq[i - 1]);
    // Each n_r lands in its own C-set: ||e_{j +- n_r}|| < 1/r for |j| <= r.
    for (std::size_t r = 1; r <= seq.size(); ++r) {
        Rat eps(BigInt(1), BigInt(r));
        for (std::int64_t j = -static_cast<std::int64_t>(r); j <= static_cast<std::int64_t>(r); ++j) {
            CHECK(ns.norm_at(j + seq[r - 1]) < eps);
            CHECK(ns.norm_at(j - seq[r - 1]) < eps);
        }
    }
}

TEST_CASE("F-mixing criterion reduction") {
    std::vector<Rat> ladder{Rat::parse("1/2"), Rat::parse("1/4"), Rat::parse("1/8")};
    Verdict v = dynamics::f_mixing_criterion_reduction(constant2(200), FamilyPredicate::parse("cofinite"), ladder, 100);
    CHECK(v.status == Status::Witnessed);

    Verdict ones =
        dynamics::f_mixing_criterion_reduction(all_ones(Side::Unilateral, 200), FamilyPredicate::parse("nonempty"),
                                               ladder, 100);
    CHECK(ones.status == Status::Refuted);

    // Interval/gap weight: the C-sets contain runs inside the long
    // intervals of F, witnessed by the thick predicate.
    IntSet F = example_set_catalog("thick_powers2");
    auto wag = construct::wag_weight(F, 10000);
    Verdict thick = dynamics::f_mixing_criterion_reduction(wag.w, FamilyPredicate::parse("thick:k=5"),
                                                           {Rat::parse("1/2"), Rat::parse("1/4")}, 10000);
    CHECK(thick.status == Status::Witnessed);
}

TEST_CASE("adjoint E-set inclusions") {
    IntSet F = example_set_catalog("thick_powers2");
    auto pair = construct::adjoint_pair_weight(F, 2000);
    Verdict v = dynamics::check_adjoint_inclusions(pair, Rat(4), 2, 2000);
    CHECK(v.status == Status::Witnessed);
    CHECK(v.witness.at("E2_size").get<std::int64_t>() > 0);
}
