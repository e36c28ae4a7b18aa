#pragma once

#include "construct.hpp"
#include "family.hpp"
#include "intset.hpp"
#include "weights.hpp"

#include <json.hpp>

#include <utility>
#include <vector>

namespace shiftlab {
namespace dynamics {

// A_{M,j} = {n >= 1 : w_{j+1}...w_{j+n} > M} and
// Abar_{M,j} = {n >= 1 : w_j w_{j-1}...w_{j-n+1} < 1/M}, exact within
// [1, N]. Strict inequalities, rational M compared exactly.
struct BesWindowSets {
    Rat M;
    std::int64_t j = 0;
    std::int64_t horizon = 0;
    Elems A;
    Elems Abar;
    std::string weight_id;

    nlohmann::json to_json() const;
};

BesWindowSets bes_sets(const WeightSeq& w, const Rat& M, std::int64_t j, std::int64_t N);

// E = {m : [m-q-j-1, m+q+j+1] subset F} within [0, N].
Elems wag_E_set_elems(const Elems& sorted_elems, std::int64_t q, std::int64_t j, std::int64_t N);
IntSet wag_E_set(const IntSet& F, std::int64_t q, std::int64_t j, std::int64_t N);

// Re-runs the E-set inclusion from the realization argument: picks the
// least q >= 1 with 2^q > M * (w_1...w_j), forms E over the preprocessed
// set, and asserts E inter [1,N] lies inside A_{M,j} inter Abar_{M,j}.
// The preprocessing applied to F matches wag_weight's.
Verdict check_wag_inclusion(const WeightSeq& w, const IntSet& F, const Rat& M, std::int64_t j, std::int64_t N);

// Joint e_0-ball return times of the direct sum of B_{w_i}^{p_i}:
// m qualifies iff every factor's window condition holds at p_i * m.
// Exact on c0 (and unilateral lp); bracket on bilateral lp.
ReturnTimeReport direct_sum_return_times(const std::vector<std::pair<WeightSeq, std::int64_t>>& specs,
                                         const SpaceKind& space, const Rat& rho, std::int64_t N);

// Running sup of min(prod w, prod v) with a 2^t threshold ladder;
// divergence is never asserted, only reached rungs are reported.
Verdict salas_unilateral_check(const WeightSeq& w, const WeightSeq& v, std::int64_t N, int ladder_depth);

// Searches n <= N such that for all |j| <= q both forward window
// products exceed 1/eps and both backward window products fall below
// eps.
Verdict salas_bilateral_check(const WeightSeq& w, const WeightSeq& v, const Rat& eps, std::int64_t q, std::int64_t N);

struct JointNormResult {
    IntSet set; // the C-set intersection within [0, N]
    Verdict verdict;
};

// Intersection over j (and both signs, bilaterally) of the small-norm
// sets C_{eps,j}(X_i), handed to the requested family predicate.
JointNormResult joint_basis_norm_check(const std::vector<NormSeq>& norms, Side side, const Rat& eps,
                                       std::int64_t Nwindow, const FamilyPredicate& predicate, std::int64_t N);

// Diagonal extraction of a strictly increasing sequence n_r with
// eps_r = 1/r and window r, following the weak-disjointness corollary.
Elems extract_disjointness_sequence(const std::vector<NormSeq>& norms, Side side, int R, std::int64_t N);

// Single-shift instantiation of the F-mixing reduction: at ladder step t
// the C-set intersection for (eps_t, window = t) must satisfy the family
// predicate; aggregates across the ladder.
Verdict f_mixing_criterion_reduction(const WeightSeq& w, const FamilyPredicate& predicate,
                                     const std::vector<Rat>& eps_ladder, std::int64_t N);

// Both E-set inclusions of the adjoint construction at one (M, j):
// E_1 (windows inside F') against the w-sets and E_2 (windows inside the
// complement) against the v-sets. Windows are confined to the block-
// structured range so the truncated tail gap never masquerades as a
// genuine gap.
Verdict check_adjoint_inclusions(const construct::AdjointPair& pair, const Rat& M, std::int64_t j, std::int64_t N);

} // namespace dynamics
} // namespace shiftlab
