#pragma once

#include "weights.hpp"

#include <cstdint>

namespace shiftlab {
namespace oracle {

// Numeric simulation oracle for e_0-ball return times on c0, independent
// of the exact product-table path: products are accumulated by direct
// double multiplication (exact for dyadic weights) and feasibility is
// probed by grid search over each free coordinate with a symmetric guard
// band. Boundary means the decision fell inside the band and carries no
// evidence either way.
enum class SimVerdict { Member, NonMember, Boundary };

SimVerdict simulate_e0_ball_membership(const WeightSeq& w, double rho, std::int64_t m, double step, double guard);

} // namespace oracle
} // namespace shiftlab
