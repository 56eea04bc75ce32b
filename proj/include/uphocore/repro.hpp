#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace upho::repro {

struct Options {
    std::uint64_t seed = 20240;
    int workers = 0;  // 0 = hardware concurrency
};

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full reproduction suite, printing one pass/fail line per
/// criterion to `out` as it goes. Returns the per-criterion results.
std::vector<CriterionResult> run_all(std::ostream& out, const Options& opt = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace upho::repro
