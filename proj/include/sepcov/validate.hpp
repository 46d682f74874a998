#pragma once

#include <string>
#include <vector>

namespace sepcov {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // measured values vs thresholds
    double seconds = 0.0;
};

// The full acceptance suite (criteria 1-12) at the stated tolerances.
// `threads` caps the workers used by the heavy Monte Carlo criteria.
std::vector<CriterionResult> run_acceptance_suite(int threads = 0);

}  // namespace sepcov
