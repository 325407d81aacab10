#pragma once

#include "grimglue/report.hpp"

#include <string>
#include <vector>

namespace grimglue {

struct VerifyOptions {
    std::uint64_t seed = 20240817;
    bool quick = false;  // skip nothing; reserved for future trimming
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    json detail;
    double seconds = 0.0;
};

// Runs the full acceptance matrix; every tolerance is pinned here.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

json acceptance_report(const std::vector<CriterionResult>& results,
                       const VerifyOptions& options);

}  // namespace grimglue
