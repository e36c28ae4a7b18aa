#include "oracle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace shiftlab {
namespace oracle {

namespace {

// Best (lowest) constraint violation for: find t with |t - center1| < rho
// and |P*t - center2| < rho. Scans a grid in t-space and one in u = P*t
// space so narrow feasibility needles on either side are not missed.
double two_constraint_margin(double P, double center1, double center2, double rho, double step) {
    double best = 1e300;
    auto probe = [&](double t) {
        double violation = std::max(std::abs(t - center1) - rho, std::abs(P * t - center2) - rho);
        best = std::min(best, violation);
    };
    for (double t = center1 - rho - 2 * step; t <= center1 + rho + 2 * step; t += step) probe(t);
    if (P > 0) {
        for (double u = center2 - rho - 2 * step; u <= center2 + rho + 2 * step; u += step) probe(u / P);
    }
    return best;
}

} // namespace

SimVerdict simulate_e0_ball_membership(const WeightSeq& w, double rho, std::int64_t m, double step, double guard) {
    if (m == 0) return SimVerdict::Member; // identity always returns
    double P = 1.0;
    for (std::int64_t i = 1; i <= m; ++i) P *= w.value_at(i).approx();
    // Coordinate m feeds coordinate 0: need |x_m| < rho and |P x_m - 1| < rho.
    double margin = two_constraint_margin(P, 0.0, 1.0, rho, step);
    if (w.side() == Side::Bilateral) {
        // Coordinate 0 lands on coordinate -m: need |x_0 - 1| < rho and
        // |Q x_0| < rho.
        double Q = 1.0;
        for (std::int64_t i = -m + 1; i <= 0; ++i) Q *= w.value_at(i).approx();
        margin = std::max(margin, two_constraint_margin(Q, 1.0, 0.0, rho, step));
    }
    if (margin < -guard) return SimVerdict::Member;
    if (margin > guard) return SimVerdict::NonMember;
    return SimVerdict::Boundary;
}

} // namespace oracle
} // namespace shiftlab
