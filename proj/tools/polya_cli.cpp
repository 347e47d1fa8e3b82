// Command-line front-end: simulate the urn, tabulate moments, characteristic
// functions and densities, and run the validation suite. Output is CSV with
// `# key=value` metadata lines or JSON carrying the same fields.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polya/charfun.hpp"
#include "polya/errors.hpp"
#include "polya/io.hpp"
#include "polya/moments.hpp"
#include "polya/stats.hpp"
#include "polya/validate.hpp"

namespace {

using namespace polya;

constexpr int kExitValidation = 1;
constexpr int kExitInvalidParams = 2;
constexpr int kExitIo = 3;
constexpr int kExitResidual = 4;
constexpr int kExitQuadrature = 5;
constexpr int kExitMissingSamples = 6;

struct CommonOpts {
    int m = 4, S = 7, b = 1;
    long long alpha = 1, beta = 0;
    std::uint64_t seed = 42;
    std::string output;
    std::string format = "csv";
    int threads = 0;
};

std::string default_output_dir() {
    const char* dir = std::getenv("POLYA_OUTPUT_DIR");
    return dir ? std::string(dir) : std::string(".");
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--m", o.m, "second eigenvalue m");
    cmd->add_option("--S", o.S, "balance S");
    cmd->add_option("--b", o.b, "off-diagonal entry b");
    cmd->add_option("--alpha", o.alpha, "initial red balls");
    cmd->add_option("--beta", o.beta, "initial black balls");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--output,-o", o.output, "output file path");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", o.threads, "worker thread cap (0 = default)");
}

UrnParams params_or_exit(const CommonOpts& o, bool need_large) {
    try {
        UrnParams p = validate_params(o.m, o.S, o.b);
        if (need_large && !p.is_large()) {
            std::cerr << "error: urn (" << o.m << "," << o.S << "," << o.b
                      << ") is not a large non-triangular urn: " << hyp_violation(o.m, o.S, o.b)
                      << "\n";
            std::exit(kExitInvalidParams);
        }
        return p;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitInvalidParams);
    }
}

void write_or_exit(const std::string& path, const std::string& content) {
    try {
        write_file(path, content);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitIo);
    }
}

std::string out_path(const CommonOpts& o, const std::string& stem) {
    if (!o.output.empty()) return o.output;
    return default_output_dir() + "/" + stem + "." + o.format;
}

std::vector<double> build_grid(double lo, double hi, int count, const std::string& spacing) {
    std::vector<double> g;
    if (count < 2) {
        g.push_back(lo);
        return g;
    }
    if (spacing == "linear") {
        for (int i = 0; i < count; ++i)
            g.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    } else if (spacing == "log") {
        for (int i = 0; i < count; ++i)
            g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    } else {  // symmetric-log
        g = symmetric_log_grid(lo, hi, count);
    }
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polya: limit distributions of large two-color Polya urns"};
    app.require_subcommand(1);

    CommonOpts sim_o, mom_o, cf_o, den_o, val_o;

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo replicas of the urn");
    add_common(sim, sim_o);
    std::string kind = "wct";
    long long replicas = 10000, steps = 1000;
    sim->add_option("--kind", kind, "estimator: wdt, xi or wct")
        ->check(CLI::IsMember({"wdt", "xi", "wct"}));
    sim->add_option("--replicas", replicas, "number of replicas");
    sim->add_option("--steps", steps, "steps (DT) or jumps (CT) per replica");

    auto* mom = app.add_subcommand("moments", "exact moment recursion");
    add_common(mom, mom_o);
    int order = 20;
    double mom_tol = 1e-12;
    mom->add_option("--order", order, "highest moment order N");
    mom->add_option("--tolerance", mom_tol, "residual tolerance");

    auto* cfc = app.add_subcommand("charfun", "tabulate the characteristic function");
    add_common(cfc, cf_o);
    double cf_min = 0.0, cf_max = 10.0;
    int cf_count = 101;
    std::string cf_spacing = "linear";
    cfc->add_option("--min", cf_min, "grid minimum");
    cfc->add_option("--max", cf_max, "grid maximum");
    cfc->add_option("--count", cf_count, "grid size");
    cfc->add_option("--spacing", cf_spacing, "linear, log or symmetric-log")
        ->check(CLI::IsMember({"linear", "log", "symmetric-log"}));

    auto* den = app.add_subcommand("density", "density of the limit law");
    add_common(den, den_o);
    double den_min = 0.1, den_max = 5.0, truncation = 1e4, den_tol = 1e-3;
    int den_count = 50;
    std::string den_spacing = "symmetric-log", method = "fourier", samples_path;
    den->add_option("--min", den_min, "grid minimum (|x|)");
    den->add_option("--max", den_max, "grid maximum (|x|)");
    den->add_option("--count", den_count, "points per sign");
    den->add_option("--spacing", den_spacing, "log or symmetric-log")
        ->check(CLI::IsMember({"log", "symmetric-log"}));
    den->add_option("--method", method, "fourier or mixture")
        ->check(CLI::IsMember({"fourier", "mixture"}));
    den->add_option("--truncation", truncation, "Fourier truncation T");
    den->add_option("--tolerance", den_tol, "truncation error tolerance");
    den->add_option("--samples", samples_path, "SampleSet CSV (mixture method)");

    CommonOpts ab_o;
    auto* abl = app.add_subcommand("abelian", "dump evaluation grids of I and its inverse J");
    add_common(abl, ab_o);
    int ab_count = 40;
    double ab_min = 0.2, ab_max = 5.0;
    abl->add_option("--min", ab_min, "smallest |z| (and |w|)");
    abl->add_option("--max", ab_max, "largest |z| (and |w|)");
    abl->add_option("--count", ab_count, "points per grid");

    auto* val = app.add_subcommand("validate", "run the validation suite");
    add_common(val, val_o);
    bool quick = false;
    val->add_flag("--quick", quick, "reduced Monte-Carlo sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            const UrnParams p = params_or_exit(sim_o, true);
            const Composition init{sim_o.alpha, sim_o.beta};
            const SampleSet s = run_replicas(p, init, sample_kind_from_string(kind), steps,
                                             replicas, sim_o.seed, sim_o.threads);
            const MeanStderr ms = mean_stderr(s.values);
            std::cout << "kind=" << kind << " replicas=" << replicas << " steps=" << steps
                      << " mean=" << ms.mean << " stderr=" << ms.stderr_ << "\n";
            if (s.kind == SampleKind::XI) {
                const KSResult ks =
                    ks_test_gamma(s.values, static_cast<double>(init.total()) / p.S);
                std::cout << "ks_vs_gamma: D=" << ks.statistic << " p=" << ks.p_value << "\n";
            }
            const std::string path = out_path(sim_o, "samples_" + kind);
            write_or_exit(path, sim_o.format == "csv" ? sample_set_csv(s) : sample_set_json(s));
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (*mom) {
            const UrnParams p = params_or_exit(mom_o, true);
            const MomentTable t = moment_recursion(p, order);
            const std::string path = out_path(mom_o, "moments");
            write_or_exit(path, mom_o.format == "csv" ? moment_table_csv(t) : moment_table_json(t));
            double worst = 0.0;
            for (double r : t.residuals) worst = std::max(worst, r);
            const double g_half =
                order >= 2 ? std::pow(std::abs(t.egf_a[static_cast<std::size_t>(order / 2)]),
                                      2.0 / order)
                           : 0.0;
            const double g_full =
                order >= 2 ? std::pow(std::abs(t.egf_a[static_cast<std::size_t>(order)]),
                                      1.0 / order)
                           : 0.0;
            std::cout << "order=" << order << " worst_residual=" << worst
                      << " zero_radius_growth=" << (g_full > g_half ? "yes" : "not-yet")
                      << " wrote " << path << "\n";
            if (worst > mom_tol) {
                std::cerr << "error: residual " << worst << " above tolerance " << mom_tol << "\n";
                return kExitResidual;
            }
            return 0;
        }
        if (*cfc) {
            const UrnParams p = params_or_exit(cf_o, true);
            const CharFunEvaluator ev(p);
            CharFunTable t;
            t.params = p;
            t.init = {cf_o.alpha, cf_o.beta};
            t.x = build_grid(cf_min, cf_max, cf_count, cf_spacing);
            for (double x : t.x) t.value.push_back(ev.charfun_general(x, t.init));
            const std::string path = out_path(cf_o, "charfun");
            write_or_exit(path, cf_o.format == "csv" ? charfun_table_csv(t) : charfun_table_json(t));
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (*den) {
            const UrnParams p = params_or_exit(den_o, true);
            const CharFunEvaluator ev(p);
            const Composition init{den_o.alpha, den_o.beta};
            const auto grid = build_grid(den_min, den_max, den_count,
                                         den_spacing == "log" ? "log" : "symmetric-log");
            DensityGrid g;
            if (method == "fourier") {
                try {
                    g = ev.density_fourier(grid, truncation, den_tol, init);
                } catch (const TailBoundExceeded& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitQuadrature;
                }
            } else {
                if (samples_path.empty()) {
                    std::cerr << "error: --method mixture requires --samples FILE\n";
                    return kExitMissingSamples;
                }
                SampleSet s;
                try {
                    s = sample_set_from_csv(read_file(samples_path));
                } catch (const std::exception& e) {
                    std::cerr << "error: cannot read samples: " << e.what() << "\n";
                    return kExitMissingSamples;
                }
                g = ev.density_mixture(s, grid);
            }
            const double integral = integrate_density(g);
            std::cout << "density integral diagnostic: " << integral << "\n";
            const std::string path = out_path(den_o, "density_" + method);
            write_or_exit(path, den_o.format == "csv" ? density_grid_csv(g) : density_grid_json(g));
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (*abl) {
            const UrnParams p = params_or_exit(ab_o, true);
            const AbelianIntegral ab(p.m, p.S, p.b);
            std::ostringstream os;
            os << "# m=" << p.m << "\n# S=" << p.S << "\n# b=" << p.b << "\n";
            os << "kind,re_in,im_in,re_out,im_out\n";
            os << std::setprecision(17);
            for (int i = 0; i < ab_count; ++i) {
                const double r = ab_min * std::pow(ab_max / ab_min,
                                                   static_cast<double>(i) / (ab_count - 1));
                const auto z = std::polar(r, 0.45 * std::numbers::pi / p.m);
                const auto iz = ab.eval_I(z);
                os << "I," << z.real() << "," << z.imag() << "," << iz.real() << ","
                   << iz.imag() << "\n";
            }
            for (int i = 0; i < ab_count; ++i) {
                const double r = ab_min * std::pow(ab_max / ab_min,
                                                   static_cast<double>(i) / (ab_count - 1));
                const auto w = std::polar(r, -0.5 * std::numbers::pi);
                const auto jw = ab.eval_J(w);
                os << "J," << w.real() << "," << w.imag() << "," << jw.real() << ","
                   << jw.imag() << "\n";
            }
            const std::string path = out_path(ab_o, "abelian_grid");
            write_or_exit(path, os.str());
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (*val) {
            params_or_exit(val_o, true);
            ValidationConfig cfg;
            cfg.m = val_o.m;
            cfg.S = val_o.S;
            cfg.b = val_o.b;
            cfg.seed = val_o.seed;
            cfg.quick = quick;
            cfg.threads = val_o.threads;
            const auto results = run_validation(cfg);
            for (const auto& r : results)
                std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  value=" << r.value
                          << " threshold=" << r.threshold << " (" << r.seconds << " s)\n";
            const std::string path = val_o.output.empty()
                                         ? default_output_dir() + "/validation.json"
                                         : val_o.output;
            write_or_exit(path, validation_report_json(results));
            std::cout << "wrote " << path << "\n";
            return all_pass(results) ? 0 : kExitValidation;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
