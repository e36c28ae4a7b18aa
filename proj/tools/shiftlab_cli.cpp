// Command-line front end for the shiftlab shared library. Everything
// here goes through the public C API in shiftlab/shiftlab.h; results
// arrive as JSON strings and are reshaped for csv/text output locally.

#include <shiftlab/shiftlab.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct StringOut {
    char* ptr = nullptr;
    ~StringOut() { slab_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct IntsetHandle {
    slab_intset* ptr = nullptr;
    ~IntsetHandle() { slab_intset_free(ptr); }
};

struct WeightHandle {
    slab_weight* ptr = nullptr;
    ~WeightHandle() { slab_weight_free(ptr); }
};

[[noreturn]] void die(slab_status status) {
    std::cerr << "error (" << status << "): " << slab_last_error() << "\n";
    std::exit(2);
}

void check(slab_status status) {
    if (status != SLAB_OK) die(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        std::exit(2);
    }
    out << content;
}

struct CommonOpts {
    std::int64_t horizon = 10000;
    std::string format = "json";
    std::string expect = "";
    bool timings = false;
};

void load_set(const std::string& catalog, const std::string& file, const std::string& name, IntsetHandle& out) {
    if (!catalog.empty()) {
        check(slab_intset_catalog(catalog.c_str(), &out.ptr));
        return;
    }
    if (!file.empty()) {
        std::string text = read_file(file);
        check(slab_intset_parse(text.c_str(), name.c_str(), &out.ptr));
        return;
    }
    std::cerr << "error: provide --set <catalog-name> or --set-file <path>\n";
    std::exit(2);
}

void load_weight(const std::string& path, WeightHandle& out) {
    std::string text = read_file(path);
    check(slab_weight_from_string(text.c_str(), &out.ptr));
}

void emit_list_csv(std::ostream& os, const std::string& header, const json& values) {
    os << header << "\n";
    for (const auto& v : values) os << v.get<std::int64_t>() << "\n";
}

template <typename Fn> json timed_verdict(const CommonOpts& opts, Fn&& call) {
    auto t0 = std::chrono::steady_clock::now();
    StringOut out;
    check(call(&out.ptr));
    json verdict = json::parse(out.str());
    if (opts.timings)
        verdict["runtime_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return verdict;
}

// Exit contract: 2 on errors, 1 when a verdict misses the expectation
// (default expectation: anything but refuted), 0 otherwise.
int verdict_exit(const json& verdict, const std::string& expect) {
    std::string status = verdict.value("status", "");
    if (expect.empty()) return status == "refuted" ? 1 : 0;
    if (expect == "any") return 0;
    return status == expect ? 0 : 1;
}

void print_verdict(const json& verdict, const CommonOpts& opts) {
    if (opts.format == "text") {
        std::cout << verdict.value("query", "?") << " @N=" << verdict.value("horizon", std::int64_t{0}) << ": "
                  << verdict.value("status", "?") << " [" << verdict.value("certainty", "?") << "]\n"
                  << "  params:  " << verdict.value("params", json::object()).dump() << "\n"
                  << "  witness: " << verdict.value("witness", json::object()).dump() << "\n";
    } else {
        std::cout << verdict.dump(2) << "\n";
    }
}

std::int64_t env_horizon(std::int64_t fallback) {
    const char* env = std::getenv("SHIFTLAB_HORIZON");
    if (!env || !*env) return fallback;
    try {
        return std::stoll(env);
    } catch (const std::exception&) {
        std::cerr << "warning: ignoring non-numeric SHIFTLAB_HORIZON\n";
        return fallback;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shiftlab: exact return-time and family computations for weighted backward shifts"};
    app.require_subcommand(1);
    app.fallthrough(); // parent options (--horizon etc.) usable after the subcommand

    CommonOpts opts;
    opts.horizon = env_horizon(10000);
    app.add_option("--horizon,-N", opts.horizon, "horizon bound (env SHIFTLAB_HORIZON overrides default)")
        ->capture_default_str();
    app.add_option("--format", opts.format, "output format: json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--expect", opts.expect, "expected verdict status for the exit code")
        ->check(CLI::IsMember({"witnessed", "refuted", "unknown", "any"}));
    app.add_flag("--timings", opts.timings, "attach runtime_ms to verdicts (output no longer byte-stable)");

    // ---------------- construct ----------------
    auto* cmd_construct = app.add_subcommand("construct", "build a weight sequence and write it to a file");
    std::string cons_name, cons_set = "thick_powers2", cons_side = "bi", cons_out, cons_set_file, cons_set_name;
    int cons_depth = 8, cons_k = 1;
    std::int64_t cons_L = 0;
    bool cons_experimental = false;
    cmd_construct->add_option("name", cons_name, "example1 | example2 | case-a | wag | adjoint | k-chain")->required();
    cmd_construct->add_option("--depth", cons_depth, "recursion depth")->capture_default_str();
    cmd_construct->add_option("--L", cons_L, "cofinite threshold for case-a")->capture_default_str();
    cmd_construct->add_option("--set", cons_set, "catalog set backing wag/adjoint")->capture_default_str();
    cmd_construct->add_option("--set-file", cons_set_file, "set description file backing wag");
    cmd_construct->add_option("--set-name", cons_set_name, "name inside the description file");
    cmd_construct->add_option("--side", cons_side, "uni | bi (wag only)")->check(CLI::IsMember({"uni", "bi"}));
    cmd_construct->add_option("--k", cons_k, "chain length for k-chain")->capture_default_str();
    cmd_construct->add_flag("--experimental", cons_experimental, "enable the experimental k-chain constructor");
    cmd_construct->add_option("--out", cons_out, "output weight file")->required();

    // ---------------- products ----------------
    auto* cmd_products = app.add_subcommand("products", "cumulative product table of a weight file");
    std::string prod_weight;
    std::int64_t prod_lo = 0, prod_hi = 0;
    bool prod_have_range = false;
    cmd_products->add_option("--weight", prod_weight)->required();
    auto* lo_opt = cmd_products->add_option("--lo", prod_lo, "table lower index");
    cmd_products->add_option("--hi", prod_hi, "table upper index")->needs(lo_opt);
    cmd_products->callback([&] { prod_have_range = lo_opt->count() > 0; });

    // ---------------- return-times ----------------
    auto* cmd_return = app.add_subcommand("return-times", "e_0-ball return times (direct sums via repeated --weight)");
    std::vector<std::string> rt_weights;
    std::vector<std::int64_t> rt_powers;
    std::string rt_space = "c0", rt_rho = "1/3";
    std::string rt_a, rt_b, rt_delta;
    cmd_return->add_option("--weight", rt_weights, "weight file (repeatable)")->required();
    cmd_return->add_option("--power", rt_powers, "power per weight (default 1)");
    cmd_return->add_option("--space", rt_space, "c0 | lp:<p>")->capture_default_str();
    cmd_return->add_option("--rho", rt_rho, "ball radius (rational in (0,1))")->capture_default_str();
    cmd_return->add_option("--a", rt_a, "general center a as JSON [[index,\"rat\"],...] (c0 only)");
    cmd_return->add_option("--b", rt_b, "general center b as JSON");
    cmd_return->add_option("--delta", rt_delta, "general ball radius");

    // ---------------- bes-check ----------------
    auto* cmd_bes = app.add_subcommand("bes-check", "window sets A_{M,j} and Abar_{M,j}");
    std::string bes_weight, bes_M = "2";
    std::int64_t bes_j = 1;
    cmd_bes->add_option("--weight", bes_weight)->required();
    cmd_bes->add_option("--M", bes_M)->capture_default_str();
    cmd_bes->add_option("--j", bes_j)->capture_default_str();

    // ---------------- wag-check ----------------
    auto* cmd_wag = app.add_subcommand("wag-check", "E-set inclusion for the interval/gap construction");
    std::string wag_set = "thick_powers2", wag_M = "4";
    std::int64_t wag_j = 3;
    cmd_wag->add_option("--set", wag_set)->capture_default_str();
    cmd_wag->add_option("--M", wag_M)->capture_default_str();
    cmd_wag->add_option("--j", wag_j)->capture_default_str();

    // ---------------- salas-uni ----------------
    auto* cmd_suni = app.add_subcommand("salas-uni", "sup-min product ladder for two unilateral weights");
    std::string suni_w, suni_v;
    int suni_ladder = 10;
    cmd_suni->add_option("--w", suni_w)->required();
    cmd_suni->add_option("--v", suni_v)->required();
    cmd_suni->add_option("--ladder", suni_ladder, "ladder depth T (rungs 2^1..2^T)")->capture_default_str();

    // ---------------- salas-bi ----------------
    auto* cmd_sbi = app.add_subcommand("salas-bi", "bilateral window condition search");
    std::string sbi_w, sbi_v, sbi_eps = "1/8";
    std::int64_t sbi_q = 2;
    cmd_sbi->add_option("--w", sbi_w)->required();
    cmd_sbi->add_option("--v", sbi_v)->required();
    cmd_sbi->add_option("--eps", sbi_eps)->capture_default_str();
    cmd_sbi->add_option("--q", sbi_q)->capture_default_str();

    // ---------------- joint-norms ----------------
    auto* cmd_norms = app.add_subcommand("joint-norms", "C-set intersection of conjugate basis norms + predicate");
    std::vector<std::string> norm_weights;
    std::string norm_eps = "1/8", norm_pred = "nonempty";
    std::int64_t norm_window = 2;
    cmd_norms->add_option("--weight", norm_weights, "weight file (repeatable)")->required();
    cmd_norms->add_option("--eps", norm_eps)->capture_default_str();
    cmd_norms->add_option("--window", norm_window)->capture_default_str();
    cmd_norms->add_option("--predicate", norm_pred)->capture_default_str();
    std::int64_t norm_extract = 0;
    cmd_norms->add_option("--extract", norm_extract, "emit the strictly increasing n_r sequence up to R");

    // ---------------- family ----------------
    auto* cmd_family = app.add_subcommand("family", "family predicates, materialization, densities");
    std::string fam_set, fam_file, fam_name, fam_pred, fam_dual;
    bool fam_materialize = false;
    std::vector<std::int64_t> fam_windows;
    std::int64_t fam_range_lo = 0, fam_range_hi = -1;
    bool fam_density = false;
    cmd_family->add_option("--set", fam_set, "catalog set name");
    cmd_family->add_option("--set-file", fam_file, "set description file");
    cmd_family->add_option("--set-name", fam_name, "name inside the description file");
    cmd_family->add_option("--predicate", fam_pred, "family predicate, e.g. thick:k=5");
    cmd_family->add_flag("--materialize", fam_materialize, "emit {name, horizon, elements[]}");
    cmd_family->add_flag("--density", fam_density, "emit density statistics");
    cmd_family->add_option("--window", fam_windows, "sliding window length(s) for --density");
    cmd_family->add_option("--range-lo", fam_range_lo, "window range start")->capture_default_str();
    cmd_family->add_option("--range-hi", fam_range_hi, "window range end (-1 = horizon-1)")->capture_default_str();
    cmd_family->add_option("--dual-against", fam_dual, "catalog member for a dual-family refutation attempt");
    std::int64_t fam_tilde_k = -1;
    cmd_family->add_option("--tilde-k", fam_tilde_k,
                           "apply --predicate to every window-shrunk set for k = 0..K (tilde membership)");

    // ---------------- verify-paper ----------------
    auto* cmd_verify = app.add_subcommand("verify-paper", "run the full claim-verification suite");
    std::string ver_rho = "1/3";
    int ver_jobs = 1, ver_ladder = 10;
    std::uint64_t ver_seed = 20260809;
    bool ver_timings = false;
    cmd_verify->add_option("--rho", ver_rho)->capture_default_str();
    cmd_verify->add_option("--jobs", ver_jobs, "parallel worker count")->capture_default_str();
    cmd_verify->add_option("--ladder", ver_ladder)->capture_default_str();
    cmd_verify->add_option("--seed", ver_seed)->capture_default_str();
    cmd_verify->add_flag("--timings", ver_timings, "include per-check timings (report no longer byte-stable)");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (cmd_construct->parsed()) {
        StringOut layout;
        WeightHandle w;
        if (cons_name == "adjoint") {
            WeightHandle v;
            check(slab_weight_adjoint_pair(cons_set.c_str(), opts.horizon, &w.ptr, &v.ptr, &layout.ptr));
            StringOut wtext, vtext;
            check(slab_weight_to_string(w.ptr, &wtext.ptr));
            check(slab_weight_to_string(v.ptr, &vtext.ptr));
            write_file(cons_out, wtext.str());
            write_file(cons_out + ".adjoint", vtext.str());
        } else {
            json params{{"depth", cons_depth}, {"L", cons_L},   {"set", cons_set},
                        {"side", cons_side},   {"k", cons_k},   {"experimental", cons_experimental},
                        {"horizon", opts.horizon}};
            if (!cons_set_file.empty()) {
                params["rule"] = read_file(cons_set_file);
                params["set_name"] = cons_set_name;
            }
            check(slab_weight_construct(cons_name.c_str(), params.dump().c_str(), &w.ptr, &layout.ptr));
            StringOut wtext;
            check(slab_weight_to_string(w.ptr, &wtext.ptr));
            write_file(cons_out, wtext.str());
        }
        write_file(cons_out + ".layout.json", layout.str() + "\n");
        std::cout << "wrote " << cons_out << " and " << cons_out << ".layout.json\n";
        return 0;
    }

    if (cmd_products->parsed()) {
        WeightHandle w;
        load_weight(prod_weight, w);
        StringOut out;
        std::int64_t lo = prod_have_range ? prod_lo : -opts.horizon;
        std::int64_t hi = prod_have_range ? prod_hi : opts.horizon;
        check(slab_products(w.ptr, lo, hi, &out.ptr));
        json table = json::parse(out.str());
        if (opts.format == "csv") {
            std::cout << "n,value\n";
            for (const auto& row : table.at("cumulative"))
                std::cout << row.at("n").get<std::int64_t>() << ","
                          << (row.contains("exponent") ? std::to_string(row.at("exponent").get<std::int64_t>())
                                                       : row.at("product").get<std::string>())
                          << "\n";
        } else {
            std::cout << table.dump(opts.format == "text" ? 2 : -1) << "\n";
        }
        return 0;
    }

    if (cmd_return->parsed()) {
        if (!rt_a.empty() || !rt_b.empty()) {
            if (rt_weights.size() != 1 || rt_a.empty() || rt_b.empty() || rt_delta.empty()) {
                std::cerr << "error: general mode needs exactly one --weight plus --a, --b, --delta\n";
                return 2;
            }
            WeightHandle w;
            load_weight(rt_weights[0], w);
            StringOut out;
            check(slab_return_times_general(w.ptr, rt_a.c_str(), rt_b.c_str(), rt_delta.c_str(), opts.horizon,
                                            &out.ptr));
            json rep = json::parse(out.str());
            if (opts.format == "csv")
                emit_list_csv(std::cout, "member", rep.at("members"));
            else
                std::cout << rep.dump(2) << "\n";
            return 0;
        }
        std::vector<WeightHandle> handles(rt_weights.size());
        std::vector<const slab_weight*> ptrs;
        std::vector<std::int64_t> powers = rt_powers;
        powers.resize(rt_weights.size(), 1);
        for (std::size_t i = 0; i < rt_weights.size(); ++i) {
            load_weight(rt_weights[i], handles[i]);
            ptrs.push_back(handles[i].ptr);
        }
        StringOut out;
        check(slab_return_times(ptrs.data(), powers.data(), ptrs.size(), rt_space.c_str(), rt_rho.c_str(),
                                opts.horizon, &out.ptr));
        json rep = json::parse(out.str());
        if (opts.format == "csv")
            emit_list_csv(std::cout, "member", rep.at("members"));
        else if (opts.format == "text")
            std::cout << "condition: " << rep.at("condition").get<std::string>() << "\nmembers ("
                      << rep.at("members").size() << "): " << rep.at("members").dump() << "\n";
        else
            std::cout << rep.dump(2) << "\n";
        return 0;
    }

    if (cmd_bes->parsed()) {
        WeightHandle w;
        load_weight(bes_weight, w);
        StringOut out;
        check(slab_bes_check(w.ptr, bes_M.c_str(), bes_j, opts.horizon, &out.ptr));
        json sets = json::parse(out.str());
        if (opts.format == "csv") {
            std::cout << "set,n\n";
            for (const auto& v : sets.at("A")) std::cout << "A," << v.get<std::int64_t>() << "\n";
            for (const auto& v : sets.at("Abar")) std::cout << "Abar," << v.get<std::int64_t>() << "\n";
        } else {
            std::cout << sets.dump(opts.format == "text" ? 2 : -1) << "\n";
        }
        return 0;
    }

    if (cmd_wag->parsed()) {
        IntsetHandle set;
        load_set(wag_set, "", "", set);
        json verdict = timed_verdict(
            opts, [&](char** p) { return slab_wag_check(set.ptr, wag_M.c_str(), wag_j, opts.horizon, p); });
        print_verdict(verdict, opts);
        return verdict_exit(verdict, opts.expect);
    }

    if (cmd_suni->parsed()) {
        WeightHandle w, v;
        load_weight(suni_w, w);
        load_weight(suni_v, v);
        json verdict = timed_verdict(
            opts, [&](char** p) { return slab_salas_unilateral(w.ptr, v.ptr, opts.horizon, suni_ladder, p); });
        print_verdict(verdict, opts);
        return verdict_exit(verdict, opts.expect);
    }

    if (cmd_sbi->parsed()) {
        WeightHandle w, v;
        load_weight(sbi_w, w);
        load_weight(sbi_v, v);
        json verdict = timed_verdict(opts, [&](char** p) {
            return slab_salas_bilateral(w.ptr, v.ptr, sbi_eps.c_str(), sbi_q, opts.horizon, p);
        });
        print_verdict(verdict, opts);
        return verdict_exit(verdict, opts.expect);
    }

    if (cmd_norms->parsed()) {
        std::vector<WeightHandle> handles(norm_weights.size());
        std::vector<const slab_weight*> ptrs;
        for (std::size_t i = 0; i < norm_weights.size(); ++i) {
            load_weight(norm_weights[i], handles[i]);
            ptrs.push_back(handles[i].ptr);
        }
        if (norm_extract > 0) {
            StringOut out;
            check(slab_extract_sequence(ptrs.data(), ptrs.size(), norm_extract, opts.horizon, &out.ptr));
            json seq = json::parse(out.str());
            if (opts.format == "csv")
                emit_list_csv(std::cout, "n_r", seq.at("sequence"));
            else
                std::cout << seq.dump(2) << "\n";
            return 0;
        }
        json verdict = timed_verdict(opts, [&](char** p) {
            return slab_joint_norms(ptrs.data(), ptrs.size(), norm_eps.c_str(), norm_window, norm_pred.c_str(),
                                    opts.horizon, p);
        });
        if (opts.format == "csv")
            emit_list_csv(std::cout, "c_set_member", verdict.at("c_set"));
        else
            print_verdict(verdict, opts);
        return verdict_exit(verdict, opts.expect);
    }

    if (cmd_family->parsed()) {
        IntsetHandle set;
        load_set(fam_set, fam_file, fam_name, set);
        if (fam_materialize) {
            StringOut out;
            check(slab_intset_materialize(set.ptr, opts.horizon, &out.ptr));
            json j = json::parse(out.str());
            if (opts.format == "csv")
                emit_list_csv(std::cout, "element", j.at("elements"));
            else
                std::cout << j.dump(opts.format == "text" ? 2 : -1) << "\n";
            return 0;
        }
        if (fam_density) {
            StringOut out;
            check(slab_density_stats(set.ptr, opts.horizon, fam_windows.data(), fam_windows.size(), fam_range_lo,
                                     fam_range_hi, &out.ptr));
            std::cout << json::parse(out.str()).dump(2) << "\n";
            return 0;
        }
        if (!fam_dual.empty()) {
            IntsetHandle member;
            load_set(fam_dual, "", "", member);
            json verdict = timed_verdict(
                opts, [&](char** p) { return slab_dual_refutation(set.ptr, member.ptr, opts.horizon, p); });
            print_verdict(verdict, opts);
            return verdict_exit(verdict, opts.expect);
        }
        if (fam_pred.empty()) {
            std::cerr << "error: provide --predicate, --materialize, --density, or --dual-against\n";
            return 2;
        }
        if (fam_tilde_k >= 0) {
            json verdict = timed_verdict(opts, [&](char** p) {
                return slab_tilde_check(set.ptr, fam_tilde_k, fam_pred.c_str(), opts.horizon, p);
            });
            print_verdict(verdict, opts);
            return verdict_exit(verdict, opts.expect);
        }
        json verdict = timed_verdict(
            opts, [&](char** p) { return slab_family_check(set.ptr, fam_pred.c_str(), opts.horizon, p); });
        print_verdict(verdict, opts);
        return verdict_exit(verdict, opts.expect);
    }

    if (cmd_verify->parsed()) {
        json cfg{{"horizon", opts.horizon}, {"rho", ver_rho},   {"ladder_depth", ver_ladder},
                 {"seed", ver_seed},        {"jobs", ver_jobs}, {"timings", ver_timings || opts.timings}};
        StringOut out;
        check(slab_verify_paper(cfg.dump().c_str(), &out.ptr));
        json report = json::parse(out.str());
        for (const auto& chk : report.at("checks"))
            std::cout << (chk.at("status") == "pass" ? "PASS " : "FAIL ") << chk.at("id").get<std::string>() << "  "
                      << chk.at("name").get<std::string>() << "\n";
        if (opts.format == "json") std::cout << report.dump(2) << "\n";
        bool ok = report.at("ok").get<bool>();
        std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
        return ok ? 0 : 1;
    }

    return 0;
}
