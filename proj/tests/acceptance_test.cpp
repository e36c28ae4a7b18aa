// Claim-verification acceptance suite. Runs every check at the default
// configuration, prints one pass/fail line per criterion with its
// runtime, and enforces the per-criterion runtime budgets.

#include "construct.hpp"
#include "verify.hpp"

#include <cstdio>
#include <map>
#include <string>

using namespace shiftlab;

int main() {
    // Budgets in milliseconds, per criterion.
    const std::map<std::string, double> budget{
        {"c1", 1000.0}, {"c2", 1000.0},  {"c3", 2000.0}, {"c4", 2000.0},
        {"c5", 2000.0}, {"c6", 5000.0},  {"c7", 1000.0}, {"c8", 30000.0},
        {"c9", 5000.0}, {"c10", 10000.0}, {"c11", 1000.0},
    };

    RunConfig config; // defaults: horizon 10^4, rho 1/3, ladder 10, fixed seed
    VerifyReport report = verify_paper(config);

    int failures = 0;
    double total = 0.0;
    for (const CheckResult& c : report.checks) {
        bool in_budget = c.millis <= budget.at(c.id);
        bool ok = c.pass && in_budget;
        total += c.millis;
        std::printf("%s %-4s %8.1f ms  %s\n", ok ? "PASS" : "FAIL", c.id.c_str(), c.millis, c.name.c_str());
        if (!c.pass) std::printf("         details: %s\n", c.details.c_str());
        if (!in_budget) std::printf("         over budget (%.0f ms allowed)\n", budget.at(c.id));
        if (!ok) ++failures;
    }
    std::printf("%s: %zu checks, %.1f ms total\n", failures == 0 ? "PASS" : "FAIL", report.checks.size(), total);

    // Two structural anchors of the worked examples, pinned.
    {
        auto [w1, l1] = construct::example1_weight(8);
        if (l1.recurrences.at("b").back() != 757 || w1.hi() != 1514) {
            std::printf("FAIL anchor: example1 depth-8 geometry (b_8, 2 b_8)\n");
            ++failures;
        }
        auto [w2, l2] = construct::example2_weight(8);
        if (l2.recurrences.at("s").back() != 817409) {
            std::printf("FAIL anchor: example2 depth-8 geometry (s_8)\n");
            ++failures;
        }
    }

    return failures == 0 ? 0 : 1;
}
