#include "shiftlab/shiftlab.h"

#include "catalog.hpp"
#include "construct.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "family.hpp"
#include "setlang.hpp"
#include "verify.hpp"
#include "weights.hpp"

#include <json.hpp>

#include <cstring>
#include <string>

using namespace shiftlab;

struct slab_intset {
    IntSet set;
};

struct slab_weight {
    WeightSeq w;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

slab_status to_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return SLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SLAB_ERR_PARSE;
    case ErrorCode::Range: return SLAB_ERR_RANGE;
    case ErrorCode::UnknownName: return SLAB_ERR_UNKNOWN_NAME;
    case ErrorCode::Validation: return SLAB_ERR_VALIDATION;
    case ErrorCode::Io: return SLAB_ERR_IO;
    case ErrorCode::Internal: return SLAB_ERR_INTERNAL;
    }
    return SLAB_ERR_INTERNAL;
}

template <typename Fn> slab_status guarded(Fn&& fn) {
    try {
        fn();
        return SLAB_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        t_last_error = e.what();
        return SLAB_ERR_PARSE;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SLAB_ERR_INTERNAL;
    }
}

slab_status require(bool cond, const char* message) {
    if (cond) return SLAB_OK;
    t_last_error = message;
    return SLAB_ERR_INVALID_ARGUMENT;
}

SparseVec sparse_from_json(const nlohmann::json& j) {
    SparseVec out;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2) fail(ErrorCode::Parse, "sparse vector entries are [index, \"rational\"]");
        out.set(entry.at(0).get<std::int64_t>(), Rat::parse(entry.at(1).get<std::string>()));
    }
    return out;
}

} // namespace

extern "C" {

const char* slab_version(void) { return "1.0.0"; }

const char* slab_last_error(void) { return t_last_error.c_str(); }

void slab_string_free(char* s) { std::free(s); }

slab_status slab_intset_catalog(const char* name, slab_intset** out) {
    if (auto st = require(name && out, "null argument")) return st;
    return guarded([&] { *out = new slab_intset{example_set_catalog(name)}; });
}

slab_status slab_intset_parse(const char* text, const char* name, slab_intset** out) {
    if (auto st = require(text && out, "null argument")) return st;
    return guarded([&] { *out = new slab_intset{parse_set_selection(text, name ? name : "")}; });
}

slab_status slab_intset_materialize(const slab_intset* set, int64_t horizon, char** json_out) {
    if (auto st = require(set && json_out, "null argument")) return st;
    return guarded([&] {
        nlohmann::json j{{"name", set->set.id().empty() ? set->set.describe() : set->set.id()},
                         {"horizon", horizon},
                         {"elements", set->set.materialize(horizon)}};
        *json_out = dup_string(j.dump());
    });
}

void slab_intset_free(slab_intset* set) { delete set; }

slab_status slab_family_check(const slab_intset* set, const char* predicate, int64_t horizon, char** json_out) {
    if (auto st = require(set && predicate && json_out, "null argument")) return st;
    return guarded([&] {
        FamilyPredicate pred = FamilyPredicate::parse(predicate);
        *json_out = dup_string(pred.eval(set->set, horizon).to_json().dump());
    });
}

slab_status slab_density_stats(const slab_intset* set, int64_t horizon, const int64_t* window_lengths,
                               size_t window_count, int64_t range_lo, int64_t range_hi, char** json_out) {
    if (auto st = require(set && json_out && (window_count == 0 || window_lengths), "null argument")) return st;
    return guarded([&] {
        std::vector<std::int64_t> lengths(window_lengths, window_lengths + window_count);
        *json_out = dup_string(family::density_stats(set->set, horizon, lengths, range_lo, range_hi).to_json().dump());
    });
}

slab_status slab_dual_refutation(const slab_intset* set, const slab_intset* member, int64_t horizon,
                                 char** json_out) {
    if (auto st = require(set && member && json_out, "null argument")) return st;
    return guarded(
        [&] { *json_out = dup_string(family::dual_refutation(set->set, member->set, horizon).to_json().dump()); });
}

slab_status slab_tilde_check(const slab_intset* set, int64_t k_max, const char* inner_predicate, int64_t horizon,
                             char** json_out) {
    if (auto st = require(set && inner_predicate && json_out, "null argument")) return st;
    return guarded([&] {
        FamilyPredicate inner = FamilyPredicate::parse(inner_predicate);
        *json_out = dup_string(family::tilde_membership_check(set->set, k_max, inner, horizon).to_json().dump());
    });
}

slab_status slab_weight_construct(const char* name, const char* params_json, slab_weight** out,
                                  char** layout_json_out) {
    if (auto st = require(name && out, "null argument")) return st;
    return guarded([&] {
        nlohmann::json params =
            params_json && *params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        std::string which = name;
        WeightSeq w;
        nlohmann::json layout;
        if (which == "example1") {
            auto [ww, lay] = construct::example1_weight(params.value("depth", 8));
            w = std::move(ww);
            layout = lay.to_json();
        } else if (which == "example2") {
            auto [ww, lay] = construct::example2_weight(params.value("depth", 8));
            w = std::move(ww);
            layout = lay.to_json();
        } else if (which == "case-a") {
            auto [ww, lay] =
                construct::wag_weight_cofinite(params.value("L", 0), params.value("horizon", std::int64_t{10000}));
            w = std::move(ww);
            layout = lay.to_json();
        } else if (which == "wag") {
            Side side = params.value("side", std::string("bi")) == "uni" ? Side::Unilateral : Side::Bilateral;
            // The backing set comes from the catalog by name, or from an
            // inline rule description.
            IntSet base = params.contains("rule")
                              ? parse_set_selection(params.at("rule").get<std::string>(),
                                                    params.value("set_name", std::string()))
                              : example_set_catalog(params.value("set", "thick_powers2"));
            auto res = construct::wag_weight(base, params.value("horizon", std::int64_t{10000}), side);
            w = std::move(res.w);
            layout = res.layout.to_json();
        } else if (which == "k-chain") {
            if (!params.value("experimental", false))
                fail(ErrorCode::InvalidArgument,
                     "k-chain is experimental and ships disabled; pass {\"experimental\": true} to enable");
            auto [ww, lay] =
                construct::experimental_k_chain_weight(params.value("k", 1), params.value("depth", 6));
            w = std::move(ww);
            layout = lay.to_json();
        } else {
            fail(ErrorCode::UnknownName, "unknown constructor '" + which + "'");
        }
        *out = new slab_weight{std::move(w)};
        if (layout_json_out) *layout_json_out = dup_string(layout.dump());
    });
}

slab_status slab_weight_adjoint_pair(const char* set_name, int64_t horizon, slab_weight** w_out, slab_weight** v_out,
                                     char** layout_json_out) {
    if (auto st = require(set_name && w_out && v_out, "null argument")) return st;
    return guarded([&] {
        auto pair = construct::adjoint_pair_weight(example_set_catalog(set_name), horizon);
        *w_out = new slab_weight{std::move(pair.w)};
        *v_out = new slab_weight{std::move(pair.v)};
        if (layout_json_out) *layout_json_out = dup_string(pair.layout.to_json().dump());
    });
}

slab_status slab_weight_from_string(const char* text, slab_weight** out) {
    if (auto st = require(text && out, "null argument")) return st;
    return guarded([&] { *out = new slab_weight{WeightSeq::from_text(text)}; });
}

slab_status slab_weight_to_string(const slab_weight* w, char** text_out) {
    if (auto st = require(w && text_out, "null argument")) return st;
    return guarded([&] { *text_out = dup_string(w->w.to_text()); });
}

void slab_weight_free(slab_weight* w) { delete w; }

slab_status slab_products(const slab_weight* w, int64_t lo, int64_t hi, char** json_out) {
    if (auto st = require(w && json_out, "null argument")) return st;
    return guarded([&] {
        ProductTable table = ProductTable::build(w->w, std::max(lo, w->w.lo()), std::min(hi, w->w.hi()));
        *json_out = dup_string(table.to_json().dump());
    });
}

slab_status slab_return_times(const slab_weight* const* weights, const int64_t* powers, size_t count,
                              const char* space, const char* rho, int64_t horizon, char** json_out) {
    if (auto st = require(weights && powers && count > 0 && space && rho && json_out, "null argument")) return st;
    return guarded([&] {
        Side side = weights[0]->w.side();
        SpaceKind kind = SpaceKind::parse(space, side);
        Rat r = Rat::parse(rho);
        if (count == 1 && powers[0] == 1) {
            *json_out = dup_string(return_time_e0_ball(weights[0]->w, kind, r, horizon).to_json().dump());
            return;
        }
        std::vector<std::pair<WeightSeq, std::int64_t>> specs;
        for (size_t i = 0; i < count; ++i) specs.emplace_back(weights[i]->w, powers[i]);
        *json_out = dup_string(dynamics::direct_sum_return_times(specs, kind, r, horizon).to_json().dump());
    });
}

slab_status slab_return_times_general(const slab_weight* w, const char* a_json, const char* b_json,
                                      const char* delta, int64_t horizon, char** json_out) {
    if (auto st = require(w && a_json && b_json && delta && json_out, "null argument")) return st;
    return guarded([&] {
        SparseVec a = sparse_from_json(nlohmann::json::parse(a_json));
        SparseVec b = sparse_from_json(nlohmann::json::parse(b_json));
        *json_out =
            dup_string(return_time_c0_general(w->w, a, b, Rat::parse(delta), horizon).to_json().dump());
    });
}

slab_status slab_bes_check(const slab_weight* w, const char* M, int64_t j, int64_t horizon, char** json_out) {
    if (auto st = require(w && M && json_out, "null argument")) return st;
    return guarded(
        [&] { *json_out = dup_string(dynamics::bes_sets(w->w, Rat::parse(M), j, horizon).to_json().dump()); });
}

slab_status slab_wag_check(const slab_intset* set, const char* M, int64_t j, int64_t horizon, char** json_out) {
    if (auto st = require(set && M && json_out, "null argument")) return st;
    return guarded([&] {
        auto wag = construct::wag_weight(set->set, horizon);
        Verdict v = dynamics::check_wag_inclusion(wag.w, set->set, Rat::parse(M), j, horizon);
        *json_out = dup_string(v.to_json().dump());
    });
}

slab_status slab_salas_unilateral(const slab_weight* w, const slab_weight* v, int64_t horizon, int ladder_depth,
                                  char** json_out) {
    if (auto st = require(w && v && json_out, "null argument")) return st;
    return guarded([&] {
        *json_out = dup_string(dynamics::salas_unilateral_check(w->w, v->w, horizon, ladder_depth).to_json().dump());
    });
}

slab_status slab_salas_bilateral(const slab_weight* w, const slab_weight* v, const char* eps, int64_t q,
                                 int64_t horizon, char** json_out) {
    if (auto st = require(w && v && eps && json_out, "null argument")) return st;
    return guarded([&] {
        *json_out =
            dup_string(dynamics::salas_bilateral_check(w->w, v->w, Rat::parse(eps), q, horizon).to_json().dump());
    });
}

slab_status slab_joint_norms(const slab_weight* const* weights, size_t count, const char* eps, int64_t window,
                             const char* predicate, int64_t horizon, char** json_out) {
    if (auto st = require(weights && count > 0 && eps && predicate && json_out, "null argument")) return st;
    return guarded([&] {
        Side side = weights[0]->w.side();
        std::vector<NormSeq> norms;
        for (size_t i = 0; i < count; ++i) {
            const WeightSeq& seq = weights[i]->w;
            if (seq.side() != side) fail(ErrorCode::InvalidArgument, "joint norm check: mixed sides");
            std::int64_t lo = side == Side::Unilateral ? 0 : std::max(seq.lo(), -horizon - window);
            std::int64_t hi = std::min(seq.hi(), horizon + window);
            norms.push_back(conjugate_basis_norms(seq, SpaceKind::c0(side), lo, hi));
        }
        FamilyPredicate pred = FamilyPredicate::parse(predicate);
        auto res = dynamics::joint_basis_norm_check(norms, side, Rat::parse(eps), window, pred, horizon);
        nlohmann::json j = res.verdict.to_json();
        j["c_set"] = res.set.materialize(horizon);
        *json_out = dup_string(j.dump());
    });
}

slab_status slab_extract_sequence(const slab_weight* const* weights, size_t count, int64_t R, int64_t horizon,
                                  char** json_out) {
    if (auto st = require(weights && count > 0 && json_out, "null argument")) return st;
    return guarded([&] {
        Side side = weights[0]->w.side();
        std::vector<NormSeq> norms;
        for (size_t i = 0; i < count; ++i) {
            const WeightSeq& seq = weights[i]->w;
            if (seq.side() != side) fail(ErrorCode::InvalidArgument, "sequence extraction: mixed sides");
            std::int64_t lo = side == Side::Unilateral ? 0 : std::max(seq.lo(), -horizon - R);
            std::int64_t hi = std::min(seq.hi(), horizon + R);
            norms.push_back(conjugate_basis_norms(seq, SpaceKind::c0(side), lo, hi));
        }
        Elems seq = dynamics::extract_disjointness_sequence(norms, side, static_cast<int>(R), horizon);
        nlohmann::json j{{"R", R}, {"horizon", horizon}, {"sequence", seq}, {"complete", seq.size() == static_cast<std::size_t>(R)}};
        *json_out = dup_string(j.dump());
    });
}

slab_status slab_verify_paper(const char* config_json, char** json_out) {
    if (auto st = require(json_out != nullptr, "null argument")) return st;
    return guarded([&] {
        nlohmann::json cfg =
            config_json && *config_json ? nlohmann::json::parse(config_json) : nlohmann::json::object();
        VerifyReport report = verify_paper(RunConfig::from_json(cfg));
        *json_out = dup_string(report.to_json().dump(2));
    });
}

} // extern "C"
