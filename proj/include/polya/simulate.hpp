#ifndef POLYA_SIMULATE_HPP
#define POLYA_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polya/params.hpp"
#include "polya/rng.hpp"

namespace polya {

struct Composition {
    std::int64_t red = 0;
    std::int64_t black = 0;
    std::int64_t total() const { return red + black; }
};

/// Discrete-time path. States are retained only when requested; the final
/// state and step count are always present.
struct Trajectory {
    UrnParams params;
    Composition init;
    Composition final_state;
    std::int64_t n_steps = 0;
    std::uint64_t seed = 0;
    std::vector<Composition> states;  // empty unless retain_states
};

/// Continuous-time path: the jump chain plus the jump times tau_0=0 < tau_1 < ...
/// Only the final jump time is kept unless states are retained.
struct CTTrajectory {
    Trajectory base;
    double tau_final = 0.0;
    std::vector<double> jump_times;  // empty unless retain_states
};

enum class SampleKind { WDT, XI, WCT };

/// Tagged Monte-Carlo replica outputs with full reproducibility metadata.
struct SampleSet {
    SampleKind kind = SampleKind::WDT;
    std::vector<double> values;
    std::int64_t n_steps = 0;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
    UrnParams params;
    Composition init;
    /// For kind=WCT runs the paired xi estimates are kept as well (same
    /// replica index), since both come from one CT trajectory.
    std::vector<double> xi_values;
};

std::string to_string(SampleKind k);
SampleKind sample_kind_from_string(const std::string& s);

/// One urn drawing step: with probability red/total add (a, b), else (c, d).
inline void step_urn(const UrnParams& p, Composition& comp, SplitMix64& rng) {
    const double u = rng.uniform01() * static_cast<double>(comp.total());
    if (u < static_cast<double>(comp.red)) {
        comp.red += p.a;
        comp.black += p.b;
    } else {
        comp.red += p.c;
        comp.black += p.d;
    }
}

Trajectory simulate_dt(const UrnParams& p, Composition init, std::int64_t n, std::uint64_t seed,
                       bool retain_states = false);

/// Continuous-time embedding: the jump chain is drawn exactly as simulate_dt
/// from one stream; holding times tau_{k+1}-tau_k ~ Exp(u + S k) come from a
/// second, separately derived stream, so chain and times are independent by
/// construction.
CTTrajectory simulate_ct(const UrnParams& p, Composition init, std::int64_t n_jumps,
                         std::uint64_t seed, bool retain_states = false);

/// Exact finite-n normalizer gamma_{x,n}(t) = prod_{k<n} (1 + t/(x+k)).
double gamma_normalizer(double x, std::int64_t n, double t);

/// Martingale estimate of the DT second-order limit: u2(state)/gamma_{u/S,n}(sigma).
/// Exact mean u2(init) at every n. With exact_normalizer=false the asymptotic
/// n^sigma Gamma(u/S)/Gamma(u/S+sigma) form is used instead.
double estimate_wdt(const Trajectory& t, bool exact_normalizer = true);

/// Conversion factor from the gamma-normalized estimate to the n^sigma
/// normalization: Gamma(u/S)/Gamma(u/S+sigma). The martingale connection
/// W^CT = xi^sigma W^DT holds for the rescaled values.
double wdt_limit_scale(const UrnParams& p, std::int64_t u);

/// (xi, W^CT) estimates at the last jump: (n e^{-S tau_n}, e^{-m tau_n} u2(state)).
std::pair<double, double> estimate_xi_wct(const CTTrajectory& t);

/// Run independent replicas; replica r uses streams derived from (seed, r),
/// so the result is identical under any scheduling or thread count.
SampleSet run_replicas(const UrnParams& p, Composition init, SampleKind kind,
                       std::int64_t n_steps, std::int64_t replicas, std::uint64_t seed,
                       int threads = 0);

}  // namespace polya

#endif
