#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace entlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 20261018;
};

// Runs acceptance criterion `id` (1..11).
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opts = {});

} // namespace entlab
