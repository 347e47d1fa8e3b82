#ifndef POLYA_VALIDATE_HPP
#define POLYA_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polya/params.hpp"

namespace polya {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured statistic (compared against threshold)
    double threshold = 0.0;  // pass iff value <= threshold unless noted in detail
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct ValidationConfig {
    int m = 4, S = 7, b = 1;
    std::uint64_t seed = 42;
    bool quick = false;
    int threads = 0;
    // Monte-Carlo sizes of the statistical checks (full mode); quick mode
    // scales them down.
    std::int64_t ks_replicas = 100000;
    std::int64_t ks_jumps = 1000;
    std::int64_t cf_replicas = 100000;
    std::int64_t cf_jumps = 10000;
    std::int64_t mc_replicas = 1000000;
    std::int64_t mc_steps = 3000;
};

std::vector<CheckResult> run_validation(const ValidationConfig& cfg);
std::string validation_report_json(const std::vector<CheckResult>& results);
bool all_pass(const std::vector<CheckResult>& results);

}  // namespace polya

#endif
