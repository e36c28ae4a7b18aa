#pragma once

#include "rat.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace shiftlab {

struct RunConfig {
    std::int64_t horizon = 10000;
    Rat rho = Rat(BigInt(1), BigInt(3));
    int ladder_depth = 10;
    std::uint64_t seed = 20260809;
    int jobs = 1;
    bool timings = false; // keep reports byte-identical by default

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string details;
    double millis = 0.0;
};

struct VerifyReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    bool ok = false;

    nlohmann::json to_json() const; // includes timings only when config.timings
};

// Runs the full claim-verification suite (the acceptance criteria) and
// returns one pass/fail entry per criterion, in stable id order.
VerifyReport verify_paper(const RunConfig& config);

} // namespace shiftlab
