#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace varjet {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the full property suite (twelve criteria) with one seed driving every
/// randomized sweep. Deterministic: same seed, same results.
std::vector<CriterionResult> run_selftest(std::uint64_t seed);

/// Prints one pass/fail line per criterion; returns the number of failures.
int report_selftest(std::uint64_t seed, std::ostream& os);

}  // namespace varjet
