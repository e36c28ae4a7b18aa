#include "dynamics.hpp"

#include "error.hpp"

#include <algorithm>

namespace shiftlab {
namespace dynamics {

namespace {

// Preprocessing identical to wag_weight's, reproduced so the inclusion
// check can start from the raw catalog set.
Elems wag_preprocess(const IntSet& F, std::int64_t N, std::int64_t min_interval) {
    Elems elems = F.materialize(N);
    Elems trimmed;
    for (std::int64_t v : elems)
        if (v != 0 && v != 1) trimmed.push_back(v);
    IntervalDecomposition decomp = decompose_elements(trimmed, N, min_interval);
    Elems out;
    for (const Interval& iv : decomp.intervals)
        for (std::int64_t v = iv.lo; v <= iv.hi; ++v) out.push_back(v);
    return out;
}

std::int64_t min_positive_q(const Rat& M, std::int64_t prefix_exp) {
    // least q >= 1 with 2^q > M * 2^{prefix_exp}
    std::int64_t q = min_exp_gt(M) + prefix_exp;
    return std::max<std::int64_t>(q, 1);
}

} // namespace

nlohmann::json BesWindowSets::to_json() const {
    return nlohmann::json{{"M", M.str()},   {"j", j},           {"horizon", horizon},
                          {"A", A},         {"Abar", Abar},     {"weight", weight_id}};
}

BesWindowSets bes_sets(const WeightSeq& w, const Rat& M, std::int64_t j, std::int64_t N) {
    if (w.side() != Side::Bilateral) fail(ErrorCode::InvalidArgument, "bes_sets needs a bilateral weight");
    if (M.sign() <= 0) fail(ErrorCode::InvalidArgument, "bes_sets: M must be positive");
    if (N < 1) fail(ErrorCode::InvalidArgument, "bes_sets: horizon must be >= 1");
    ProductTable table = ProductTable::build(w);
    if (j + N > table.hi() || j - N < table.lo())
        fail(ErrorCode::Range, "bes_sets: product table does not cover [j-N, j+N]");
    BesWindowSets out;
    out.M = M;
    out.j = j;
    out.horizon = N;
    out.weight_id = w.id();
    if (w.is_dyadic()) {
        std::int64_t fwd_min = min_exp_gt(M);               // window exponent must be >= this
        std::int64_t bwd_max = max_exp_lt(Rat(1) / M);      // window exponent must be <= this
        for (std::int64_t n = 1; n <= N; ++n) {
            if (table.forward_exp(j, n) >= fwd_min) out.A.push_back(n);
            if (table.backward_exp(j, n) <= bwd_max) out.Abar.push_back(n);
        }
    } else {
        Rat inv = Rat(1) / M;
        for (std::int64_t n = 1; n <= N; ++n) {
            if (table.forward(j, n) > M) out.A.push_back(n);
            if (table.backward(j, n) < inv) out.Abar.push_back(n);
        }
    }
    return out;
}

Elems wag_E_set_elems(const Elems& sorted_elems, std::int64_t q, std::int64_t j, std::int64_t N) {
    Elems out;
    std::int64_t r = q + j + 1;
    std::size_t i = 0;
    while (i < sorted_elems.size()) {
        std::size_t k = i;
        while (k + 1 < sorted_elems.size() && sorted_elems[k + 1] == sorted_elems[k] + 1) ++k;
        // run [lo, hi]: m needs [m - r, m + r] inside it
        std::int64_t lo = sorted_elems[i] + r, hi = std::min(sorted_elems[k] - r, N);
        for (std::int64_t m = lo; m <= hi; ++m) out.push_back(m);
        i = k + 1;
    }
    return out;
}

IntSet wag_E_set(const IntSet& F, std::int64_t q, std::int64_t j, std::int64_t N) {
    if (q < 0 || j < 0) fail(ErrorCode::InvalidArgument, "wag_E_set: q and j must be >= 0");
    // Windows around m <= N reach up to m + q + j + 1, so materialize F
    // far enough that membership near the horizon is decidable.
    auto set = IntSet::finite(wag_E_set_elems(F.materialize(N + q + j + 1), q, j, N));
    set.with_id("E(q=" + std::to_string(q) + ",j=" + std::to_string(j) + ")");
    return set;
}

Verdict check_wag_inclusion(const WeightSeq& w, const IntSet& F, const Rat& M, std::int64_t j, std::int64_t N) {
    if (j < 0) fail(ErrorCode::InvalidArgument, "check_wag_inclusion: j must be >= 0");
    ProductTable table = ProductTable::build(w);
    Verdict v;
    v.query = "wag_inclusion";
    v.params = {{"M", M.str()}, {"j", j}};
    v.horizon = N;

    std::int64_t q = min_positive_q(M, table.exponent(j));
    Elems kept = wag_preprocess(F, N, 2);
    Elems E = wag_E_set_elems(kept, q, j, N);

    BesWindowSets sets = bes_sets(w, M, j, N);
    std::vector<char> inA(static_cast<std::size_t>(N) + 1, 0), inAbar(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t n : sets.A) inA[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t n : sets.Abar) inAbar[static_cast<std::size_t>(n)] = 1;

    std::int64_t checked = 0;
    for (std::int64_t m : E) {
        if (m < 1) continue;
        ++checked;
        if (!inA[static_cast<std::size_t>(m)] || !inAbar[static_cast<std::size_t>(m)]) {
            v.status = Status::Refuted;
            v.certainty = Certainty::Absolute;
            v.witness = {{"violating_m", m},
                         {"in_A", static_cast<bool>(inA[static_cast<std::size_t>(m)])},
                         {"in_Abar", static_cast<bool>(inAbar[static_cast<std::size_t>(m)])},
                         {"q", q}};
            return v;
        }
    }
    v.status = Status::Witnessed;
    v.certainty = Certainty::Absolute;
    v.witness = {{"q", q}, {"E_size", checked}, {"A_size", sets.A.size()}, {"Abar_size", sets.Abar.size()}};
    return v;
}

ReturnTimeReport direct_sum_return_times(const std::vector<std::pair<WeightSeq, std::int64_t>>& specs,
                                         const SpaceKind& space, const Rat& rho, std::int64_t N) {
    if (specs.empty()) fail(ErrorCode::InvalidArgument, "direct_sum_return_times: need at least one factor");
    if (!(rho > Rat(0) && rho < Rat(1))) fail(ErrorCode::InvalidArgument, "radius must lie in (0,1)");
    Rat forward_threshold = (Rat(1) - rho) / rho;
    Rat backward_threshold = rho / (Rat(1) - rho);

    struct Factor {
        ProductTable table;
        std::int64_t power;
        bool bilateral;
    };
    std::vector<Factor> factors;
    bool all_exact_space = space.base == SpaceKind::Base::C0;
    bool any_bilateral = false;
    for (const auto& [w, p] : specs) {
        if (p < 1) fail(ErrorCode::InvalidArgument, "direct_sum_return_times: power must be >= 1");
        if (w.side() != space.side) fail(ErrorCode::InvalidArgument, "factor side does not match space side");
        Factor f{ProductTable::build(w), p, w.side() == Side::Bilateral};
        if (f.table.hi() < p * N || (f.bilateral && f.table.lo() > -p * N))
            fail(ErrorCode::Range, "direct_sum_return_times: product table too small for power * horizon");
        any_bilateral |= f.bilateral;
        factors.push_back(std::move(f));
    }
    bool exact = all_exact_space || !any_bilateral;

    ReturnTimeReport report;
    report.space = space.str();
    report.radius = rho.str();
    report.horizon = N;
    report.certification = exact ? "exact" : "bracket";
    report.condition = "for every factor i: prod(1..p_i*m) > " + forward_threshold.str() +
                       (any_bilateral ? " and prod(-p_i*m+1..0) < " + backward_threshold.str() : "");
    {
        std::string ids;
        for (const auto& [w, p] : specs) ids += (ids.empty() ? "" : " (+) ") + w.id() + "^" + std::to_string(p);
        report.weight_id = ids;
    }

    std::optional<std::int64_t> fwd_min, bwd_max;
    bool all_dyadic = std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.table.is_dyadic(); });
    if (all_dyadic) {
        fwd_min = min_exp_gt(forward_threshold);
        bwd_max = max_exp_lt(backward_threshold);
    }

    report.members.push_back(0);
    report.sufficient_members.push_back(0);
    for (std::int64_t m = 1; m <= N; ++m) {
        bool ok = true;
        for (const Factor& f : factors) {
            std::int64_t idx = f.power * m;
            bool fwd_ok, bwd_ok = true;
            if (f.table.is_dyadic() && all_dyadic) {
                fwd_ok = f.table.exponent(idx) >= *fwd_min;
                if (f.bilateral) bwd_ok = -f.table.exponent(-idx) <= *bwd_max;
            } else {
                fwd_ok = f.table.product(idx) > forward_threshold;
                if (f.bilateral) bwd_ok = Rat(1) / f.table.product(-idx) < backward_threshold;
            }
            if (!(fwd_ok && bwd_ok)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            report.members.push_back(m);
            if (exact) report.sufficient_members.push_back(m);
        }
    }
    if (exact) return report;

    // Bracket the lp direct sum: each factor must admit the
    // two-coordinate witness, independently per summand.
    for (std::int64_t m : report.members) {
        if (m == 0) continue;
        bool ok = true;
        for (const Factor& f : factors) {
            std::int64_t idx = f.power * m;
            Rat P = f.table.is_dyadic() ? Rat::pow2(std::min<std::int64_t>(f.table.exponent(idx), 4096))
                                        : f.table.product(idx);
            Rat Q(0);
            if (f.bilateral)
                Q = f.table.is_dyadic() ? Rat::pow2(std::max<std::int64_t>(-f.table.exponent(-idx), -4096))
                                        : Rat(1) / f.table.product(-idx);
            Rat a1 = Rat(1) - P * rho;
            if (a1.sign() < 0) a1 = Rat(0);
            bool suff = a1 + Q < rho;
            if (!suff && space.p.is_integer()) {
                unsigned pi = static_cast<unsigned>(space.p.num());
                auto pw = [pi](const Rat& x) {
                    Rat r(1);
                    for (unsigned t = 0; t < pi; ++t) r *= x;
                    return r;
                };
                suff = pw(a1) + pw(Q) < pw(rho);
            }
            if (!suff) {
                ok = false;
                break;
            }
        }
        if (ok) report.sufficient_members.push_back(m);
    }
    return report;
}

Verdict salas_unilateral_check(const WeightSeq& w, const WeightSeq& v, std::int64_t N, int ladder_depth) {
    if (w.side() != Side::Unilateral || v.side() != Side::Unilateral)
        fail(ErrorCode::InvalidArgument, "salas_unilateral_check needs unilateral weights");
    if (ladder_depth < 1) fail(ErrorCode::InvalidArgument, "ladder depth must be >= 1");
    ProductTable tw = ProductTable::build(w);
    ProductTable tv = ProductTable::build(v);
    if (tw.hi() < N || tv.hi() < N) fail(ErrorCode::Range, "salas_unilateral_check: weight range below horizon");

    Verdict out;
    out.query = "salas_unilateral";
    out.params = {{"ladder_depth", ladder_depth}};
    out.horizon = N;

    bool dyadic = tw.is_dyadic() && tv.is_dyadic();
    nlohmann::json rungs = nlohmann::json::array();
    if (dyadic) {
        std::int64_t sup_exp = std::numeric_limits<std::int64_t>::min();
        std::int64_t sup_at = 0;
        std::vector<std::int64_t> first_at(static_cast<std::size_t>(ladder_depth) + 1, -1);
        for (std::int64_t n = 1; n <= N; ++n) {
            std::int64_t e = std::min(tw.exponent(n), tv.exponent(n));
            if (e > sup_exp) {
                sup_exp = e;
                sup_at = n;
                for (std::int64_t t = 1; t <= ladder_depth; ++t)
                    if (first_at[static_cast<std::size_t>(t)] < 0 && e >= t) first_at[static_cast<std::size_t>(t)] = n;
            }
        }
        int reached = 0;
        for (int t = 1; t <= ladder_depth; ++t) {
            bool hit = first_at[static_cast<std::size_t>(t)] >= 0;
            if (hit) ++reached;
            rungs.push_back({{"t", t}, {"threshold", "2^" + std::to_string(t)}, {"reached", hit},
                             {"at", first_at[static_cast<std::size_t>(t)]}});
        }
        out.witness = {{"sup", "2^" + std::to_string(sup_exp)}, {"sup_exponent", sup_exp}, {"sup_at", sup_at},
                       {"rungs", rungs}, {"rungs_reached", reached}};
        out.status = reached == ladder_depth ? Status::Witnessed : Status::Unknown;
        out.certainty = Certainty::HorizonOnly;
        return out;
    }
    Rat sup(0);
    std::int64_t sup_at = 0;
    std::vector<std::int64_t> first_at(static_cast<std::size_t>(ladder_depth) + 1, -1);
    for (std::int64_t n = 1; n <= N; ++n) {
        Rat pw = tw.product(n), pv = tv.product(n);
        Rat m = pw < pv ? pw : pv;
        if (m > sup) {
            sup = m;
            sup_at = n;
            for (std::int64_t t = 1; t <= ladder_depth; ++t)
                if (first_at[static_cast<std::size_t>(t)] < 0 && cmp_pow2(t, m) <= 0) first_at[static_cast<std::size_t>(t)] = n;
        }
    }
    int reached = 0;
    for (int t = 1; t <= ladder_depth; ++t) {
        bool hit = first_at[static_cast<std::size_t>(t)] >= 0;
        if (hit) ++reached;
        rungs.push_back({{"t", t}, {"threshold", "2^" + std::to_string(t)}, {"reached", hit},
                         {"at", first_at[static_cast<std::size_t>(t)]}});
    }
    out.witness = {{"sup", sup.str()}, {"sup_at", sup_at}, {"rungs", rungs}, {"rungs_reached", reached}};
    out.status = reached == ladder_depth ? Status::Witnessed : Status::Unknown;
    out.certainty = Certainty::HorizonOnly;
    return out;
}

Verdict salas_bilateral_check(const WeightSeq& w, const WeightSeq& v, const Rat& eps, std::int64_t q, std::int64_t N) {
    if (w.side() != Side::Bilateral || v.side() != Side::Bilateral)
        fail(ErrorCode::InvalidArgument, "salas_bilateral_check needs bilateral weights");
    if (eps.sign() <= 0) fail(ErrorCode::InvalidArgument, "eps must be positive");
    if (q < 0) fail(ErrorCode::InvalidArgument, "q must be >= 0");
    ProductTable tw = ProductTable::build(w);
    ProductTable tv = ProductTable::build(v);
    for (const ProductTable* t : {&tw, &tv})
        if (t->hi() < N + q || t->lo() > -N - q)
            fail(ErrorCode::Range, "salas_bilateral_check: tables must cover [-N-q, N+q]");

    Verdict out;
    out.query = "salas_bilateral";
    out.params = {{"eps", eps.str()}, {"q", q}};
    out.horizon = N;

    bool dyadic = tw.is_dyadic() && tv.is_dyadic();
    Rat inv_eps = Rat(1) / eps;
    std::int64_t fwd_min = 0, bwd_max = 0;
    if (dyadic) {
        fwd_min = min_exp_gt(inv_eps);
        bwd_max = max_exp_lt(eps);
    }
    for (std::int64_t n = 1; n <= N; ++n) {
        bool ok = true;
        for (std::int64_t j = -q; j <= q && ok; ++j) {
            if (dyadic) {
                ok = tw.forward_exp(j, n) >= fwd_min && tv.forward_exp(j, n) >= fwd_min &&
                     tw.backward_exp(j, n) <= bwd_max && tv.backward_exp(j, n) <= bwd_max;
            } else {
                ok = tw.forward(j, n) > inv_eps && tv.forward(j, n) > inv_eps && tw.backward(j, n) < eps &&
                     tv.backward(j, n) < eps;
            }
        }
        if (ok) {
            out.status = Status::Witnessed;
            out.certainty = Certainty::Absolute;
            out.witness = {{"n", n}};
            return out;
        }
    }
    out.status = Status::Unknown;
    out.witness = {{"note", "no n below the horizon satisfies all window conditions"}};
    return out;
}

namespace {

std::vector<char> joint_c_set_mask(const std::vector<NormSeq>& norms, Side side, const Rat& eps,
                                   std::int64_t Nwindow, std::int64_t N) {
    if (norms.empty()) fail(ErrorCode::InvalidArgument, "joint norm check needs at least one norm sequence");
    std::int64_t max_exp = max_exp_lt(eps); // dyadic fast path: norm exponent must be <= this
    std::vector<char> mask(static_cast<std::size_t>(N) + 1, 1);
    for (const NormSeq& ns : norms) {
        if (ns.side != side) fail(ErrorCode::InvalidArgument, "norm sequence side mismatch");
        if (side == Side::Unilateral) {
            if (ns.hi() < N + Nwindow) fail(ErrorCode::Range, "norm sequence too short for window");
            for (std::int64_t n = 0; n <= N; ++n) {
                if (!mask[static_cast<std::size_t>(n)]) continue;
                bool ok = true;
                for (std::int64_t j = 0; j <= Nwindow && ok; ++j)
                    ok = ns.dyadic ? ns.exp_at(n + j) <= max_exp : ns.norm_at(n + j) < eps;
                mask[static_cast<std::size_t>(n)] = ok;
            }
        } else {
            if (ns.hi() < N + Nwindow || ns.lo > -N - Nwindow)
                fail(ErrorCode::Range, "norm sequence too short for window");
            for (std::int64_t n = 0; n <= N; ++n) {
                if (!mask[static_cast<std::size_t>(n)]) continue;
                bool ok = true;
                for (std::int64_t j = -Nwindow; j <= Nwindow && ok; ++j) {
                    bool plus = ns.dyadic ? ns.exp_at(j + n) <= max_exp : ns.norm_at(j + n) < eps;
                    bool minus = ns.dyadic ? ns.exp_at(j - n) <= max_exp : ns.norm_at(j - n) < eps;
                    ok = plus && minus;
                }
                mask[static_cast<std::size_t>(n)] = ok;
            }
        }
    }
    return mask;
}

} // namespace

JointNormResult joint_basis_norm_check(const std::vector<NormSeq>& norms, Side side, const Rat& eps,
                                       std::int64_t Nwindow, const FamilyPredicate& predicate, std::int64_t N) {
    std::vector<char> mask = joint_c_set_mask(norms, side, eps, Nwindow, N);
    Elems members;
    for (std::int64_t n = 0; n <= N; ++n)
        if (mask[static_cast<std::size_t>(n)]) members.push_back(n);
    IntSet set = IntSet::finite(members);
    set.with_id("C(eps=" + eps.str() + ",window=" + std::to_string(Nwindow) + ")");
    Verdict inner = predicate.eval(set, N);
    Verdict out;
    out.query = "joint_basis_norms";
    out.params = {{"eps", eps.str()}, {"window", Nwindow}, {"predicate", predicate.name()}};
    out.horizon = N;
    out.status = inner.status;
    out.certainty = inner.certainty;
    out.witness = {{"c_set_size", members.size()}, {"predicate_verdict", inner.to_json()}};
    return {std::move(set), std::move(out)};
}

Elems extract_disjointness_sequence(const std::vector<NormSeq>& norms, Side side, int R, std::int64_t N) {
    Elems out;
    std::int64_t last = 0;
    for (int r = 1; r <= R; ++r) {
        std::vector<char> mask = joint_c_set_mask(norms, side, Rat(BigInt(1), BigInt(r)), r, N);
        std::int64_t pick = -1;
        for (std::int64_t n = last + 1; n <= N; ++n)
            if (mask[static_cast<std::size_t>(n)]) {
                pick = n;
                break;
            }
        if (pick < 0) break; // horizon exhausted
        out.push_back(pick);
        last = pick;
    }
    return out;
}

Verdict f_mixing_criterion_reduction(const WeightSeq& w, const FamilyPredicate& predicate,
                                     const std::vector<Rat>& eps_ladder, std::int64_t N) {
    if (eps_ladder.empty()) fail(ErrorCode::InvalidArgument, "f_mixing_criterion_reduction: empty ladder");
    Side side = w.side();
    std::int64_t max_window = static_cast<std::int64_t>(eps_ladder.size());
    NormSeq norms = side == Side::Unilateral
                        ? conjugate_basis_norms(w, SpaceKind::c0(side), 0, std::min(w.hi(), N + max_window))
                        : conjugate_basis_norms(w, SpaceKind::c0(side), std::max(w.lo(), -N - max_window),
                                                std::min(w.hi(), N + max_window));
    Verdict out;
    out.query = "f_mixing_reduction";
    out.params = {{"predicate", predicate.name()}, {"ladder_size", eps_ladder.size()}};
    out.horizon = N;
    nlohmann::json steps = nlohmann::json::array();
    Status agg = Status::Witnessed;
    Certainty cert = Certainty::Absolute;
    for (std::size_t t = 0; t < eps_ladder.size(); ++t) {
        std::int64_t window = static_cast<std::int64_t>(t) + 1;
        JointNormResult res = joint_basis_norm_check({norms}, side, eps_ladder[t], window, predicate, N);
        steps.push_back({{"eps", eps_ladder[t].str()}, {"window", window}, {"status", to_string(res.verdict.status)}});
        if (res.verdict.certainty == Certainty::HorizonOnly) cert = Certainty::HorizonOnly;
        if (res.verdict.status == Status::Refuted) {
            agg = Status::Refuted;
            break;
        }
        if (res.verdict.status == Status::Unknown && agg == Status::Witnessed) agg = Status::Unknown;
    }
    out.status = agg;
    out.certainty = cert;
    out.witness = {{"steps", steps}};
    return out;
}

Verdict check_adjoint_inclusions(const construct::AdjointPair& pair, const Rat& M, std::int64_t j, std::int64_t N) {
    if (j < 1) fail(ErrorCode::InvalidArgument, "check_adjoint_inclusions: j must be >= 1");
    Verdict out;
    out.query = "adjoint_inclusions";
    out.params = {{"M", M.str()}, {"j", j}};
    out.horizon = N;

    ProductTable tw = ProductTable::build(pair.w);
    std::int64_t cap = std::min(N, pair.layout.structured_hi);
    const Elems& kept = pair.layout.preprocessed;

    // E_1 against the w-sets.
    std::int64_t q1 = min_positive_q(M, tw.exponent(j));
    Elems E1 = wag_E_set_elems(kept, q1, j, cap);
    BesWindowSets w_sets = bes_sets(pair.w, M, j, N);

    // E_2 windows live in the complement of F' within [1, cap].
    // q2: 2^{q2} > M * max(w_0 w_{-1}...w_{-j+1}, v_j v_{j-1}...v_2).
    std::int64_t back_w_exp = tw.backward_exp(0, j); // w_0 ... w_{-j+1}
    ProductTable tv = ProductTable::build(pair.v);
    std::int64_t v_tail_exp = j >= 2 ? tv.forward_exp(1, j - 1) : 0; // v_2...v_j
    std::int64_t q2 = std::max(min_positive_q(M, std::max(back_w_exp, v_tail_exp)), static_cast<std::int64_t>(1));

    Elems complement;
    {
        std::vector<char> in_kept(static_cast<std::size_t>(cap) + 1, 0);
        for (std::int64_t e : kept)
            if (e <= cap) in_kept[static_cast<std::size_t>(e)] = 1;
        for (std::int64_t n = 1; n <= cap; ++n)
            if (!in_kept[static_cast<std::size_t>(n)]) complement.push_back(n);
    }
    // E_2 = {m : [m-q2-j, m+q2+j+1] inside the complement}; reuse the run
    // scanner with the asymmetric window via a half-index shift: a window
    // [m-a, m+b] fits a run [lo, hi] iff lo+a <= m <= hi-b.
    Elems E2;
    {
        std::int64_t a = q2 + j, b = q2 + j + 1;
        std::size_t i = 0;
        while (i < complement.size()) {
            std::size_t k = i;
            while (k + 1 < complement.size() && complement[k + 1] == complement[k] + 1) ++k;
            for (std::int64_t m = complement[i] + a; m <= std::min(complement[k] - b, cap); ++m) E2.push_back(m);
            i = k + 1;
        }
    }
    BesWindowSets v_sets = bes_sets(pair.v, M, j, N);

    auto subset_violation = [N](const Elems& E, const BesWindowSets& sets) -> std::optional<std::int64_t> {
        std::vector<char> inA(static_cast<std::size_t>(N) + 1, 0), inAbar(static_cast<std::size_t>(N) + 1, 0);
        for (std::int64_t n : sets.A) inA[static_cast<std::size_t>(n)] = 1;
        for (std::int64_t n : sets.Abar) inAbar[static_cast<std::size_t>(n)] = 1;
        for (std::int64_t m : E) {
            if (m < 1) continue;
            if (!inA[static_cast<std::size_t>(m)] || !inAbar[static_cast<std::size_t>(m)]) return m;
        }
        return std::nullopt;
    };

    auto viol1 = subset_violation(E1, w_sets);
    auto viol2 = subset_violation(E2, v_sets);
    if (viol1 || viol2) {
        out.status = Status::Refuted;
        out.certainty = Certainty::Absolute;
        out.witness = {{"E1_violation", viol1 ? nlohmann::json(*viol1) : nlohmann::json()},
                       {"E2_violation", viol2 ? nlohmann::json(*viol2) : nlohmann::json()},
                       {"q1", q1}, {"q2", q2}};
        return out;
    }
    out.status = Status::Witnessed;
    out.certainty = Certainty::Absolute;
    out.witness = {{"q1", q1}, {"q2", q2}, {"E1_size", E1.size()}, {"E2_size", E2.size()}, {"checked_up_to", cap}};
    return out;
}

} // namespace dynamics
} // namespace shiftlab
