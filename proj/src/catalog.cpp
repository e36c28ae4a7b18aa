#include "catalog.hpp"

#include "error.hpp"

namespace shiftlab {

namespace {

constexpr std::int64_t kSalasDiffWitnessHorizon = 100000000; // diffs below ~4/5 of this are exact

IntSet make_thick_powers2() {
    auto set = IntSet::interval_union(SetExpr::parse("2^n"), SetExpr::parse("2^n + n"), 1);
    set.with_id("thick_powers2").with_fact({Fact::Kind::Infinite, ""});
    return set;
}

IntSet make_grid(std::int64_t n) {
    if (n < 1 || n > 20) fail(ErrorCode::InvalidArgument, "grid(n) supports 1 <= n <= 20");
    std::int64_t modulus = n;
    for (std::int64_t i = 0; i < n; ++i) modulus *= 3;
    Elems residues;
    for (std::int64_t i = 0; i < n; ++i) residues.push_back(i);
    auto set = IntSet::arithmetic_grid(modulus, std::move(residues), modulus);
    set.with_id("grid(" + std::to_string(n) + ")").with_fact({Fact::Kind::Infinite, ""});
    return set;
}

IntSet make_grid_union() {
    std::vector<IntSet> members;
    for (std::int64_t n = 1; n <= 20; ++n) members.push_back(make_grid(n));
    auto set = IntSet::set_union(std::move(members));
    set.with_id("grid_union").with_fact({Fact::Kind::Infinite, ""});
    return set;
}

IntSet make_fs_tens() {
    auto set = IntSet::finite_sums(SetExpr::parse("10^n"));
    set.with_id("fs_tens")
        .with_fact({Fact::Kind::Infinite, ""})
        .with_fact({Fact::Kind::IpSet, "10^n"})
        .with_fact({Fact::Kind::DisjointFrom, "complement_fs_tens"});
    return set;
}

IntSet make_complement_fs_tens() {
    auto set = make_fs_tens().complemented();
    set.with_id("complement_fs_tens")
        .with_fact({Fact::Kind::Infinite, ""})
        .with_fact({Fact::Kind::DisjointFrom, "fs_tens"});
    return set;
}

IntSet make_complement_powers2() {
    auto powers = IntSet::interval_union(SetExpr::parse("2^n"), SetExpr::parse("2^n"), 1);
    powers.with_id("powers2");
    auto set = powers.complemented();
    set.with_id("complement_powers2").with_fact({Fact::Kind::Infinite, ""});
    return set;
}

IntSet make_salas_fs() {
    auto fs = IntSet::finite_sums_literal(salas_growth_sequence());
    fs.with_id("salas_fs_generators").with_fact({Fact::Kind::IpSet, "salas growth sequence"});
    auto set = fs.complemented();
    set.with_id("salas_fs")
        .with_fact({Fact::Kind::Infinite, ""})
        .with_fact({Fact::Kind::ImplementerChosen, "s1=5, s(n+1)=4*(sum_{i<=n} s_i + n)+1"});
    return set;
}

IntSet make_salas_diff() {
    auto s = IntSet::finite(salas_growth_sequence());
    s.with_id("salas_set");
    auto diff = s.difference_set(kSalasDiffWitnessHorizon);
    diff.with_id("salas_diffset");
    auto set = diff.complemented();
    set.with_id("salas_diff")
        .with_fact({Fact::Kind::Infinite, ""})
        .with_fact({Fact::Kind::ImplementerChosen, "s1=5, s(n+1)=4*(sum_{i<=n} s_i + n)+1"});
    return set;
}

} // namespace

Elems salas_growth_sequence() {
    Elems s;
    s.push_back(5);
    __int128 sum = 5;
    for (std::int64_t n = 1;; ++n) {
        __int128 next = 4 * (sum + n) + 1;
        if (next > std::numeric_limits<std::int64_t>::max() / 2) break;
        s.push_back(static_cast<std::int64_t>(next));
        sum += next;
    }
    return s;
}

IntSet example_set_catalog(const std::string& name) {
    if (name == "thick_powers2") return make_thick_powers2();
    if (name == "grid_union") return make_grid_union();
    if (name == "fs_tens") return make_fs_tens();
    if (name == "complement_fs_tens") return make_complement_fs_tens();
    if (name == "complement_powers2") return make_complement_powers2();
    if (name == "salas_fs") return make_salas_fs();
    if (name == "salas_diff") return make_salas_diff();
    if (name.rfind("grid(", 0) == 0 && name.back() == ')') {
        std::string arg = name.substr(5, name.size() - 6);
        try {
            return make_grid(std::stoll(arg));
        } catch (const std::invalid_argument&) {
            fail(ErrorCode::InvalidArgument, "grid(n): bad parameter '" + arg + "'");
        } catch (const std::out_of_range&) {
            fail(ErrorCode::InvalidArgument, "grid(n): parameter out of range '" + arg + "'");
        }
    }
    fail(ErrorCode::UnknownName, "unknown catalog set '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"thick_powers2", "grid(n)",  "grid_union", "fs_tens",
            "complement_fs_tens", "complement_powers2", "salas_fs", "salas_diff"};
}

} // namespace shiftlab
