#include <doctest.h>

#include "catalog.hpp"
#include "error.hpp"
#include "family.hpp"

using namespace shiftlab;

namespace {
IntSet evens() { return IntSet::arithmetic_grid(2, {0}); }
IntSet naturals() { return IntSet::arithmetic_grid(1, {0}); }
} // namespace

TEST_CASE("max gap") {
    CHECK(max_gap(evens(), 100).gap == 2);
    GapLocation g = max_gap(example_set_catalog("thick_powers2"), 100);
    CHECK(g.gap == 27);
    CHECK(g.from == 37);
    CHECK(g.to == 64);
    CHECK(max_gap(IntSet::finite({0}), 10).gap == 0);
    // Leading gap counts from 0.
    GapLocation lead = max_gap(IntSet::finite({9, 10}), 10);
    CHECK(lead.gap == 9);
    CHECK(lead.leading);
    CHECK_THROWS_AS(max_gap(IntSet::finite({}), 10), Error);
}

TEST_CASE("thick witness") {
    // [2,3] and [4,6] merge, so five consecutive integers appear at 2.
    Verdict v = family::thick_witness(example_set_catalog("thick_powers2"), 5, 100);
    CHECK(v.status == Status::Witnessed);
    CHECK(v.witness.at("run_start") == 2);

    CHECK(family::thick_witness(evens(), 2, 1000).status == Status::Unknown);
    Verdict nat = family::thick_witness(naturals(), 17, 100);
    CHECK(nat.status == Status::Witnessed);
    CHECK(nat.witness.at("run_start") == 0);

    // Monotone in k.
    Verdict v8 = family::thick_witness(example_set_catalog("thick_powers2"), 8, 1000);
    CHECK(v8.status == Status::Witnessed);
    CHECK(v8.witness.at("run_start") == 128);
}

TEST_CASE("syndetic bound check") {
    CHECK(family::syndetic_bound_check(evens(), 2, 100).status == Status::Witnessed);
    CHECK(family::syndetic_bound_check(evens(), 2, 100).certainty == Certainty::HorizonOnly);
    Verdict r = family::syndetic_bound_check(example_set_catalog("thick_powers2"), 10, 100);
    CHECK(r.status == Status::Refuted);
    CHECK(r.certainty == Certainty::Absolute);
    CHECK(r.witness.at("gap") == 27);
    CHECK(r.witness.at("from") == 37);
    CHECK(family::syndetic_bound_check(naturals(), 1, 100).status == Status::Witnessed);
}

TEST_CASE("thickly syndetic check") {
    CHECK(family::thickly_syndetic_check(naturals(), 4, 1, 100).status == Status::Witnessed);
    CHECK(family::thickly_syndetic_check(example_set_catalog("complement_fs_tens"), 3, 50, 10000).status ==
          Status::Witnessed);
    Verdict r = family::thickly_syndetic_check(evens(), 1, 5, 100);
    CHECK(r.status == Status::Refuted); // A_1 is empty
}

TEST_CASE("piecewise syndetic check") {
    Verdict v1 = family::piecewise_syndetic_check(evens(), 100, 1, 1000);
    CHECK(v1.status == Status::Witnessed);
    CHECK(v1.witness.at("run_start") == 0);
    Verdict v2 = family::piecewise_syndetic_check(example_set_catalog("thick_powers2"), 6, 0, 100);
    CHECK(v2.status == Status::Witnessed);
    CHECK(v2.witness.at("run_start") == 32);
    CHECK(family::piecewise_syndetic_check(IntSet::finite({0}), 2, 0, 10).status == Status::Unknown);
}

TEST_CASE("density statistics") {
    auto grid2 = family::density_stats(example_set_catalog("grid(2)"), 1800, {});
    CHECK(grid2.count == 198);
    CHECK(grid2.density == Rat(BigInt(11), BigInt(100)));
    Rat target = Rat(BigInt(1), BigInt(9));
    Rat err = target - grid2.density;
    if (err.sign() < 0) err = -err;
    CHECK(err <= target / Rat(10));

    auto nat = family::density_stats(naturals(), 100, {10});
    CHECK(nat.density == Rat(1));
    CHECK(nat.windows.front().min_ratio == Rat(1));
    CHECK(nat.windows.front().max_ratio == Rat(1));

    auto comp = family::density_stats(example_set_catalog("complement_powers2"), 100000, {100}, 10000, 99999);
    CHECK(comp.windows.front().min_ratio >= Rat(BigInt(99), BigInt(100)));

    // banach window at L = N equals the horizon density.
    auto whole = family::density_stats(example_set_catalog("thick_powers2"), 321, {321});
    CHECK(whole.windows.front().min_ratio == whole.density);
    CHECK(whole.windows.front().max_ratio == whole.density);

    CHECK_THROWS_AS(family::density_stats(naturals(), 100, {101}), Error);
}

TEST_CASE("ip witness search") {
    Verdict fs = family::ip_witness_search(example_set_catalog("fs_tens"), 3, 1200);
    CHECK(fs.status == Status::Witnessed);
    CHECK(fs.witness.at("generators").get<Elems>() == Elems{10, 100, 1000});

    Verdict ev = family::ip_witness_search(evens(), 4, 100);
    CHECK(ev.status == Status::Witnessed);
    Elems gens = ev.witness.at("generators").get<Elems>();
    CHECK(family::verify_ip_witness(evens(), gens, 100));

    CHECK(family::ip_witness_search(IntSet::finite({1}), 2, 10).status == Status::Unknown);
}

TEST_CASE("ip witness exhaustive verifier rejects bad prefixes") {
    CHECK(family::verify_ip_witness(example_set_catalog("fs_tens"), {10, 100, 1000}, 1200));
    CHECK(!family::verify_ip_witness(example_set_catalog("fs_tens"), {10, 20}, 1200));
    CHECK(!family::verify_ip_witness(example_set_catalog("fs_tens"), {10, 100, 1000}, 1000)); // 1110 > 1000
}

TEST_CASE("dual refutation") {
    IntSet fs = example_set_catalog("fs_tens");
    Verdict hard = family::dual_refutation(example_set_catalog("complement_fs_tens"), fs, 10000);
    CHECK(hard.status == Status::Refuted);
    CHECK(hard.certainty == Certainty::Absolute);

    // Intersecting sets are never refuted.
    CHECK(family::dual_refutation(naturals(), fs, 100).status == Status::Unknown);

    // Horizon disjointness without a symbolic fact stays unknown.
    IntSet sparse = IntSet::finite({99999});
    Verdict soft = family::dual_refutation(sparse, fs, 50);
    CHECK(soft.status == Status::Unknown);
    CHECK(soft.witness.at("disjoint_up_to_horizon") == true);

    // Complement-by-construction refutes.
    IntSet F = example_set_catalog("thick_powers2");
    CHECK(family::dual_refutation(F.complemented(), F, 100).status == Status::Refuted);
}

TEST_CASE("tilde membership") {
    Verdict thick = family::tilde_membership_check(example_set_catalog("thick_powers2"), 3,
                                                   FamilyPredicate::parse("thick:k=4"), 10000);
    CHECK(thick.status == Status::Witnessed);

    Verdict ev = family::tilde_membership_check(evens(), 1, FamilyPredicate::parse("nonempty"), 100);
    CHECK(ev.status == Status::Refuted);
    CHECK(ev.witness.at("failed_at_k") == 1);

    // Shrinking by k shifts the leading edge out to k, so the bound must
    // absorb it: b = 3 covers every k <= 2.
    Verdict nat = family::tilde_membership_check(naturals(), 2, FamilyPredicate::parse("syndetic:b=3"), 100);
    CHECK(nat.status == Status::Witnessed);
    Verdict tight = family::tilde_membership_check(naturals(), 2, FamilyPredicate::parse("syndetic:b=1"), 100);
    CHECK(tight.status == Status::Refuted); // leading gap 2 at k = 2
}

TEST_CASE("predicate parsing") {
    CHECK(FamilyPredicate::parse("thick:k=5").eval(naturals(), 10).status == Status::Witnessed);
    CHECK(FamilyPredicate::parse("cofinite").eval(naturals(), 50).status == Status::Witnessed);
    CHECK(FamilyPredicate::parse("cofinite").eval(evens(), 50).status == Status::Unknown);
    CHECK(FamilyPredicate::parse("density_at_least:r=1/2").eval(evens(), 100).status == Status::Witnessed);
    CHECK(FamilyPredicate::parse("lower_banach_at_least:L=10,r=2/5").eval(evens(), 100).status == Status::Witnessed);
    CHECK_THROWS_AS(FamilyPredicate::parse("thick"), Error);
    CHECK_THROWS_AS(FamilyPredicate::parse("unknown:k=1"), Error);
}

TEST_CASE("verdict json schema") {
    Verdict v = family::thick_witness(naturals(), 3, 10);
    auto j = v.to_json();
    CHECK(j.at("query") == "thick");
    CHECK(j.at("status") == "witnessed");
    CHECK(j.at("horizon") == 10);
    CHECK(j.contains("params"));
    CHECK(j.contains("witness"));
    CHECK(j.contains("certainty"));
}
