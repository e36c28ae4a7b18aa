#include <doctest.h>

#include <shiftlab/shiftlab.h>

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { slab_string_free(p); }
    std::string s() const { return p ? p : ""; }
};

} // namespace

TEST_CASE("catalog sets through the C API") {
    slab_intset* set = nullptr;
    REQUIRE(slab_intset_catalog("thick_powers2", &set) == SLAB_OK);
    Str out;
    REQUIRE(slab_intset_materialize(set, 20, &out.p) == SLAB_OK);
    json j = json::parse(out.s());
    CHECK(j.at("elements") == json::array({2, 3, 4, 5, 6, 8, 9, 10, 11, 16, 17, 18, 19, 20}));
    CHECK(j.at("horizon") == 20);
    slab_intset_free(set);

    slab_intset* bad = nullptr;
    CHECK(slab_intset_catalog("nope", &bad) == SLAB_ERR_UNKNOWN_NAME);
    CHECK(std::string(slab_last_error()).find("nope") != std::string::npos);
}

TEST_CASE("set descriptions and family checks") {
    const char* text = "A = grid(mod=2, residues={0})\nB = complement(A)\n";
    slab_intset* set = nullptr;
    REQUIRE(slab_intset_parse(text, "A", &set) == SLAB_OK);
    Str verdict;
    REQUIRE(slab_family_check(set, "syndetic:b=2", 100, &verdict.p) == SLAB_OK);
    json v = json::parse(verdict.s());
    CHECK(v.at("status") == "witnessed");
    CHECK(v.at("certainty") == "horizon");
    slab_intset_free(set);

    slab_intset* nothing = nullptr;
    CHECK(slab_intset_parse("A = grid(mod=0, residues={0})", nullptr, &nothing) != SLAB_OK);
}

TEST_CASE("density stats through the C API") {
    slab_intset* set = nullptr;
    REQUIRE(slab_intset_catalog("complement_powers2", &set) == SLAB_OK);
    int64_t windows[] = {100};
    Str out;
    REQUIRE(slab_density_stats(set, 100000, windows, 1, 10000, 99999, &out.p) == SLAB_OK);
    json stats = json::parse(out.s());
    CHECK(stats.at("windows")[0].at("min_ratio") == "99/100");
    slab_intset_free(set);
}

TEST_CASE("dual refutation through the C API") {
    slab_intset* comp = nullptr;
    slab_intset* fs = nullptr;
    REQUIRE(slab_intset_catalog("complement_fs_tens", &comp) == SLAB_OK);
    REQUIRE(slab_intset_catalog("fs_tens", &fs) == SLAB_OK);
    Str out;
    REQUIRE(slab_dual_refutation(comp, fs, 5000, &out.p) == SLAB_OK);
    CHECK(json::parse(out.s()).at("status") == "refuted");
    slab_intset_free(comp);
    slab_intset_free(fs);
}

TEST_CASE("weight construction, serialization, products") {
    slab_weight* w = nullptr;
    Str layout;
    REQUIRE(slab_weight_construct("example1", R"({"depth": 4})", &w, &layout.p) == SLAB_OK);
    json lay = json::parse(layout.s());
    CHECK(lay.at("recurrences").at("b") == json::array({2, 7, 18, 41}));

    Str text;
    REQUIRE(slab_weight_to_string(w, &text.p) == SLAB_OK);
    slab_weight* back = nullptr;
    REQUIRE(slab_weight_from_string(text.s().c_str(), &back) == SLAB_OK);
    Str text2;
    REQUIRE(slab_weight_to_string(back, &text2.p) == SLAB_OK);
    CHECK(text.s() == text2.s());

    Str products;
    REQUIRE(slab_products(w, 0, 7, &products.p) == SLAB_OK);
    json table = json::parse(products.s());
    CHECK(table.at("cumulative")[7].at("exponent") == 0);
    CHECK(table.at("cumulative")[6].at("exponent") == 2);

    slab_weight_free(back);
    slab_weight_free(w);

    slab_weight* rejected = nullptr;
    CHECK(slab_weight_construct("k-chain", R"({"k": 2, "depth": 4})", &rejected, nullptr) ==
          SLAB_ERR_INVALID_ARGUMENT);
    REQUIRE(slab_weight_construct("k-chain", R"({"k": 2, "depth": 4, "experimental": true})", &rejected, nullptr) ==
            SLAB_OK);
    slab_weight_free(rejected);
}

TEST_CASE("return times and window sets") {
    slab_weight* w = nullptr;
    REQUIRE(slab_weight_construct("example1", R"({"depth": 5})", &w, nullptr) == SLAB_OK);

    const slab_weight* ws[] = {w, w};
    int64_t powers[] = {1, 2};
    Str joint;
    REQUIRE(slab_return_times(ws, powers, 2, "c0", "1/3", 88, &joint.p) == SLAB_OK);
    CHECK(json::parse(joint.s()).at("members") == json::array({0}));

    Str single;
    REQUIRE(slab_return_times(ws, powers, 1, "c0", "1/3", 88, &single.p) == SLAB_OK);
    CHECK(json::parse(single.s()).at("members").size() > 1);
    slab_weight_free(w);

    slab_weight* ca = nullptr;
    REQUIRE(slab_weight_construct("case-a", R"({"L": 0, "horizon": 50})", &ca, nullptr) == SLAB_OK);
    Str bes;
    REQUIRE(slab_bes_check(ca, "3", 0, 20, &bes.p) == SLAB_OK);
    json b = json::parse(bes.s());
    CHECK(b.at("A")[0] == 2);
    CHECK(b.at("Abar")[0] == 4); // w_0 = 2 shifts the backward cutoff

    Str general;
    REQUIRE(slab_return_times_general(ca, R"([[0,"1"]])", R"([[0,"1"]])", "1/3", 20, &general.p) == SLAB_OK);
    json g = json::parse(general.s());
    CHECK(g.at("members")[0] == 0);
    slab_weight_free(ca);
}

TEST_CASE("wag check, salas checks, joint norms") {
    slab_intset* set = nullptr;
    REQUIRE(slab_intset_catalog("thick_powers2", &set) == SLAB_OK);
    Str wag;
    REQUIRE(slab_wag_check(set, "4", 3, 1500, &wag.p) == SLAB_OK);
    CHECK(json::parse(wag.s()).at("status") == "witnessed");
    slab_intset_free(set);

    slab_weight* wu = nullptr;
    REQUIRE(slab_weight_construct("wag", R"({"set":"thick_powers2","horizon":800,"side":"uni"})", &wu, nullptr) ==
            SLAB_OK);
    Str ladder;
    REQUIRE(slab_salas_unilateral(wu, wu, 800, 4, &ladder.p) == SLAB_OK);
    CHECK(json::parse(ladder.s()).at("witness").at("rungs_reached") == 4);
    slab_weight_free(wu);

    slab_weight* ca = nullptr;
    REQUIRE(slab_weight_construct("case-a", R"({"L": 0, "horizon": 80})", &ca, nullptr) == SLAB_OK);
    Str sbi;
    REQUIRE(slab_salas_bilateral(ca, ca, "1/8", 2, 60, &sbi.p) == SLAB_OK);
    CHECK(json::parse(sbi.s()).at("status") == "witnessed");

    const slab_weight* ws[] = {ca};
    Str norms;
    REQUIRE(slab_joint_norms(ws, 1, "1/8", 2, "cofinite", 60, &norms.p) == SLAB_OK);
    json nj = json::parse(norms.s());
    CHECK(nj.at("status") == "witnessed");
    CHECK(nj.at("c_set")[0] == 8);
    slab_weight_free(ca);
}

TEST_CASE("adjoint pair through the C API") {
    slab_weight* w = nullptr;
    slab_weight* v = nullptr;
    Str layout;
    REQUIRE(slab_weight_adjoint_pair("thick_powers2", 300, &w, &v, &layout.p) == SLAB_OK);
    CHECK(json::parse(layout.s()).at("structured_hi").get<int64_t>() >= 256);
    slab_weight_free(w);
    slab_weight_free(v);
}

TEST_CASE("verify-paper reports are deterministic and pass at reduced horizons") {
    Str a, b;
    REQUIRE(slab_verify_paper(R"({"horizon": 400, "jobs": 1})", &a.p) == SLAB_OK);
    REQUIRE(slab_verify_paper(R"({"horizon": 400, "jobs": 1})", &b.p) == SLAB_OK);
    CHECK(a.s() == b.s());
    json rep = json::parse(a.s());
    CHECK(rep.at("ok") == true);
    CHECK(rep.at("checks").size() == 11);

    Str parallel;
    REQUIRE(slab_verify_paper(R"({"horizon": 400, "jobs": 3})", &parallel.p) == SLAB_OK);
    json prep = json::parse(parallel.s());
    // Same verdicts regardless of scheduling; the config block differs.
    CHECK(prep.at("checks") == rep.at("checks"));

    Str bad;
    CHECK(slab_verify_paper(R"({"horizon": -1})", &bad.p) == SLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tilde membership and sequence extraction through the C API") {
    slab_intset* set = nullptr;
    REQUIRE(slab_intset_catalog("thick_powers2", &set) == SLAB_OK);
    Str tilde;
    REQUIRE(slab_tilde_check(set, 2, "thick:k=4", 2000, &tilde.p) == SLAB_OK);
    CHECK(json::parse(tilde.s()).at("status") == "witnessed");
    slab_intset_free(set);

    slab_weight* ca = nullptr;
    REQUIRE(slab_weight_construct("case-a", R"({"L": 0, "horizon": 120})", &ca, nullptr) == SLAB_OK);
    const slab_weight* ws[] = {ca};
    Str seq;
    REQUIRE(slab_extract_sequence(ws, 1, 5, 100, &seq.p) == SLAB_OK);
    json sj = json::parse(seq.s());
    CHECK(sj.at("complete") == true);
    CHECK(sj.at("sequence").size() == 5);
    slab_weight_free(ca);
}
