// Acceptance suite: runs every validation check on the default urn (4, 7, 1)
// at full Monte-Carlo size and prints one pass/fail line per criterion.
// Returns nonzero if any check fails.
#include <cstdio>
#include <cstring>
#include <map>
#include <string>

#include "polya/validate.hpp"

int main(int argc, char** argv) {
    polya::ValidationConfig cfg;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) cfg.quick = true;

    // criterion numbering of the validation plan
    const std::map<std::string, std::string> criterion = {
        {"means_exact", "1"},
        {"moment_residuals", "2"},
        {"c0_crosscheck", "3"},
        {"ij_roundtrips", "4a"},
        {"i_series_vs_quadrature", "4b"},
        {"ode_residual", "5"},
        {"boundary_slope", "6"},
        {"ks_xi_gamma", "7"},
        {"empirical_cf", "8"},
        {"martingale_connection", "9"},
        {"density_fourier_vs_mixture", "10a"},
        {"density_normalization", "10b"},
        {"support_both_signs", "11"},
        {"zero_radius_growth", "12"},
    };

    const auto results = polya::run_validation(cfg);
    int failures = 0;
    for (const auto& r : results) {
        const auto it = criterion.find(r.name);
        std::printf("[%3s] %-28s %s  value=%.6g threshold=%.6g  (%.1f s)\n",
                    it != criterion.end() ? it->second.c_str() : "?", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.value, r.threshold, r.seconds);
        if (!r.detail.empty()) std::printf("      %s\n", r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
