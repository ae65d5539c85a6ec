#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oml {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;     // stable one-line outcome summary
    double elapsed_ms = 0;  // informative; never part of the report body
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> criteria;
    std::string report_body;  // byte-stable given the same seed
    bool all_pass = false;
};

// Runs the acceptance suite. The seeded portions (random subspace trials)
// derive every stream from `seed`; the whole suite is executed twice and the
// report bodies compared, which is the determinism criterion.
AcceptanceOutcome run_acceptance(std::uint64_t seed);

} // namespace oml
