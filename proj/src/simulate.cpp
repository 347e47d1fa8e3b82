#include "polya/simulate.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polya/specfun.hpp"

namespace polya {

namespace {
constexpr std::uint64_t kTagChain = 0x636861696eULL;  // "chain"
constexpr std::uint64_t kTagTimes = 0x74696d6573ULL;  // "times"
}  // namespace

std::string to_string(SampleKind k) {
    switch (k) {
        case SampleKind::WDT: return "wdt";
        case SampleKind::XI: return "xi";
        case SampleKind::WCT: return "wct";
    }
    return "?";
}

SampleKind sample_kind_from_string(const std::string& s) {
    if (s == "wdt") return SampleKind::WDT;
    if (s == "xi") return SampleKind::XI;
    if (s == "wct") return SampleKind::WCT;
    throw std::invalid_argument("unknown sample kind: " + s);
}

Trajectory simulate_dt(const UrnParams& p, Composition init, std::int64_t n, std::uint64_t seed,
                       bool retain_states) {
    if (init.total() <= 0) throw std::invalid_argument("simulate_dt: initial composition is zero");
    if (n < 0) throw std::invalid_argument("simulate_dt: n must be >= 0");
    Trajectory t;
    t.params = p;
    t.init = init;
    t.seed = seed;
    t.n_steps = n;
    SplitMix64 rng = derive_stream(seed, 0, kTagChain);
    Composition comp = init;
    if (retain_states) {
        t.states.reserve(static_cast<std::size_t>(n) + 1);
        t.states.push_back(comp);
    }
    for (std::int64_t k = 0; k < n; ++k) {
        step_urn(p, comp, rng);
        if (retain_states) t.states.push_back(comp);
    }
    t.final_state = comp;
    return t;
}

CTTrajectory simulate_ct(const UrnParams& p, Composition init, std::int64_t n_jumps,
                         std::uint64_t seed, bool retain_states) {
    CTTrajectory ct;
    ct.base = simulate_dt(p, init, n_jumps, seed, retain_states);
    SplitMix64 clock = derive_stream(seed, 0, kTagTimes);
    const std::int64_t u = init.total();
    double tau = 0.0;
    if (retain_states) {
        ct.jump_times.reserve(static_cast<std::size_t>(n_jumps) + 1);
        ct.jump_times.push_back(0.0);
    }
    for (std::int64_t k = 0; k < n_jumps; ++k) {
        tau += clock.exponential(static_cast<double>(u + p.S * k));
        if (retain_states) ct.jump_times.push_back(tau);
    }
    ct.tau_final = tau;
    return ct;
}

double gamma_normalizer(double x, std::int64_t n, double t) {
    double g = 1.0;
    for (std::int64_t k = 0; k < n; ++k) {
        g *= 1.0 + t / (x + static_cast<double>(k));
        if (!std::isfinite(g)) break;
    }
    return g;
}

double estimate_wdt(const Trajectory& t, bool exact_normalizer) {
    const UrnParams& p = t.params;
    const double u_over_s = static_cast<double>(t.init.total()) / p.S;
    const double sigma = p.sigma.value();
    double norm;
    if (exact_normalizer) {
        norm = gamma_normalizer(u_over_s, t.n_steps, sigma);
        if (!std::isfinite(norm))
            norm = std::pow(static_cast<double>(t.n_steps), sigma) / gamma_ratio(u_over_s, sigma);
    } else {
        norm = t.n_steps == 0
                   ? 1.0
                   : std::pow(static_cast<double>(t.n_steps), sigma) / gamma_ratio(u_over_s, sigma);
    }
    return p.u2_of(static_cast<double>(t.final_state.red), static_cast<double>(t.final_state.black)) /
           norm;
}

double wdt_limit_scale(const UrnParams& p, std::int64_t u) {
    const double x = static_cast<double>(u) / p.S;
    return 1.0 / gamma_ratio(x, p.sigma.value());
}

std::pair<double, double> estimate_xi_wct(const CTTrajectory& t) {
    if (t.base.n_steps < 1) throw std::invalid_argument("estimate_xi_wct: need at least one jump");
    const UrnParams& p = t.base.params;
    const double n = static_cast<double>(t.base.n_steps);
    const double xi = n * std::exp(-p.S * t.tau_final);
    const double wct = std::exp(-p.m * t.tau_final) *
                       p.u2_of(static_cast<double>(t.base.final_state.red),
                               static_cast<double>(t.base.final_state.black));
    return {xi, wct};
}

namespace {

// One replica without trajectory retention; streams derived from (seed, r).
void run_one(const UrnParams& p, Composition init, SampleKind kind, std::int64_t n_steps,
             std::uint64_t seed, std::int64_t r, double& value, double* xi_out) {
    SplitMix64 chain = derive_stream(seed, static_cast<std::uint64_t>(r), kTagChain);
    Composition comp = init;
    for (std::int64_t k = 0; k < n_steps; ++k) step_urn(p, comp, chain);

    if (kind == SampleKind::WDT) {
        const double u_over_s = static_cast<double>(init.total()) / p.S;
        double norm = gamma_normalizer(u_over_s, n_steps, p.sigma.value());
        value = p.u2_of(static_cast<double>(comp.red), static_cast<double>(comp.black)) / norm;
        return;
    }
    SplitMix64 clock = derive_stream(seed, static_cast<std::uint64_t>(r), kTagTimes);
    const std::int64_t u = init.total();
    double tau = 0.0;
    for (std::int64_t k = 0; k < n_steps; ++k)
        tau += clock.exponential(static_cast<double>(u + p.S * k));
    const double xi = static_cast<double>(n_steps) * std::exp(-p.S * tau);
    if (kind == SampleKind::XI) {
        value = xi;
    } else {
        value = std::exp(-p.m * tau) *
                p.u2_of(static_cast<double>(comp.red), static_cast<double>(comp.black));
        if (xi_out) *xi_out = xi;
    }
}

}  // namespace

SampleSet run_replicas(const UrnParams& p, Composition init, SampleKind kind,
                       std::int64_t n_steps, std::int64_t replicas, std::uint64_t seed,
                       int threads) {
    if (replicas < 1) throw std::invalid_argument("run_replicas: replicas must be >= 1");
    if (init.total() <= 0) throw std::invalid_argument("run_replicas: initial composition is zero");
    SampleSet out;
    out.kind = kind;
    out.n_steps = n_steps;
    out.replicas = replicas;
    out.seed = seed;
    out.params = p;
    out.init = init;
    out.values.assign(static_cast<std::size_t>(replicas), 0.0);
    if (kind == SampleKind::WCT) out.xi_values.assign(static_cast<std::size_t>(replicas), 0.0);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t r = 0; r < replicas; ++r) {
        double* xi_slot = kind == SampleKind::WCT ? &out.xi_values[static_cast<std::size_t>(r)] : nullptr;
        run_one(p, init, kind, n_steps, seed, r, out.values[static_cast<std::size_t>(r)], xi_slot);
    }
    (void)threads;
    return out;
}

}  // namespace polya
