#include "cavharvest/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cavharvest/cavity.hpp"
#include "cavharvest/config.hpp"
#include "cavharvest/decomposition.hpp"
#include "cavharvest/emit.hpp"
#include "cavharvest/errors.hpp"
#include "cavharvest/generator_cache.hpp"
#include "cavharvest/recipes.hpp"
#include "cavharvest/sweep.hpp"
#include "cavharvest/validation.hpp"

namespace cavharvest {

namespace {

struct GlobalOptions {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool no_cache = false;
    std::string cache_dir;
    int precision = 0;  // 0: keep the configured value
};

SweepOptions sweep_options(const GlobalOptions& g) {
    SweepOptions o;
    o.threads = std::max(1u, g.threads);
    if (!g.no_cache) {
        if (!g.cache_dir.empty()) {
            o.cache_dir = g.cache_dir;
        } else if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') {
            o.cache_dir = env;
        }
    }
    return o;
}

int effective_precision(const GlobalOptions& g, int configured) {
    const int p = g.precision > 0 ? g.precision : configured;
    if (p < 1 || p > 17) {
        throw ValidationError("precision must be between 1 and 17 significant digits");
    }
    return p;
}

void report_assertions(const std::string& name, const std::vector<AssertionResult>& results, bool& all_ok) {
    for (const auto& a : results) {
        std::cerr << (a.passed ? "PASS " : "FAIL ") << name << ": " << a.description;
        if (!a.detail.empty()) {
            std::cerr << " (" << a.detail << ")";
        }
        std::cerr << '\n';
        all_ok = all_ok && a.passed;
    }
}

int cmd_sweep(const GlobalOptions& g, const std::string& config_path, const std::string& out_override,
              bool convergence_check) {
    if (!std::filesystem::exists(config_path)) {
        std::cerr << "error: config file not found: " << config_path << '\n';
        return 2;
    }
    SweepSpec spec = load_sweep_config(config_path);
    spec.precision = effective_precision(g, spec.precision);
    if (!out_override.empty()) {
        spec.output = out_override;
    }
    const auto opts = sweep_options(g);
    const auto reports = run_sweep(spec, opts);
    emit(reports, spec.format, spec.output, spec.precision);

    if (convergence_check) {
        SweepSpec refined = spec;
        refined.cavity.n_modes *= 2;
        const auto drift = relative_drift(reports, run_sweep(refined, opts));
        std::cerr << "convergence N=" << spec.cavity.n_modes << " -> " << refined.cavity.n_modes
                  << ": max relative drift E_N " << drift.log_negativity << ", I " << drift.mutual_information
                  << ", D " << drift.discord << ", nu1 " << drift.nu1 << ", nu2 " << drift.nu2 << '\n';
    }
    return 0;
}

int cmd_figure(const GlobalOptions& g, const std::string& name, const std::string& out, bool list) {
    if (list) {
        for (const auto& r : figure_recipes()) {
            std::cout << r.name << "  " << r.title << "  [" << r.notes << "]\n";
        }
        return 0;
    }
    if (name.empty()) {
        std::cerr << "error: figure needs a recipe name (try --list)\n";
        return 2;
    }
    const auto& recipe = find_recipe(name);
    SweepSpec spec = recipe.spec;
    spec.precision = effective_precision(g, spec.precision);
    spec.output = out;
    const auto reports = run_sweep(spec, sweep_options(g));
    emit(reports, spec.format, spec.output, spec.precision);

    bool ok = true;
    report_assertions(recipe.name, recipe.check(reports), ok);
    return ok ? 0 : 1;
}

struct CorrfuncArgs {
    std::vector<double> temperatures{0.0, 1.0, 10.0};
    double r_min = 0.0;
    double r_max = 50.0;
    std::size_t count = 201;
    double length = 100.0;
    int n_modes = 80;
    std::string out;
};

int cmd_corrfunc(const GlobalOptions& g, const CorrfuncArgs& a) {
    CavityConfig cfg = CavityConfig::reference();
    cfg.length = a.length;
    cfg.n_modes = a.n_modes;
    cfg.validate();
    const Axis rs = Axis::grid(a.r_min, a.r_max, a.count);
    rs.validate("r");
    const int p = effective_precision(g, 12);

    std::string text = "r,T,C,C_free\n";
    for (double temp : a.temperatures) {
        const FieldTemperature ft(temp);
        for (double r : rs.values()) {
            const double c = cavity_correlation_function(r, ft, cfg);
            const double free = (r > 0.0 && temp > 0.0) ? free_space_correlation(r, temp)
                                                        : std::numeric_limits<double>::quiet_NaN();
            text += format_number(r, p) + ',' + format_number(temp, p) + ',' + format_number(c, p) + ',' +
                    format_number(free, p) + '\n';
        }
    }
    write_text(a.out, text);
    return 0;
}

struct DecomposeArgs {
    double r = 4.0;
    double t = 2.0;
    std::vector<double> temperatures{0.0, 1.0, 2.0, 5.0, 10.0};
    int n_modes = 80;
    std::string out;
    std::string couplings_out;
    std::string surface_out;
    double nu_max = 3.0;
    std::size_t surface_count = 41;
};

int cmd_decompose(const GlobalOptions& g, const DecomposeArgs& a) {
    CavityConfig cfg = CavityConfig::reference(a.r);
    cfg.n_modes = a.n_modes;
    cfg.validate();
    const int p = effective_precision(g, 12);
    const GeneratorCache cache(sweep_options(g).cache_dir);
    const auto gen = cache.get(cfg);
    const Eigen::MatrixXd rows = gen.detector_rows(a.t);

    std::string text = "T,nu_minus,nu_plus,nu_gap,off_block,eigenvalue_product,passive_entangling,E_N,I,I_thermal\n";
    for (double temp : a.temperatures) {
        const auto state = detector_state(rows, initial_state_diagonal(cfg, FieldTemperature(temp)));
        const auto pm = beam_split(state);
        const auto verdict = passive_entanglement_criterion(pm);
        const auto rep = correlation_report(state, {a.t, a.r, temp});
        text += format_number(temp, p) + ',' + format_number(pm.nu_minus, p) + ',' + format_number(pm.nu_plus, p) +
                ',' + format_number(std::abs(pm.nu_plus - pm.nu_minus), p) + ',' +
                format_number(pm.off_block_residual, p) + ',' + format_number(verdict.eigenvalue_product, p) + ',' +
                (verdict.entangling_possible ? "1" : "0") + ',' + format_number(rep.log_negativity, p) + ',' +
                format_number(rep.mutual_information, p) + ',' +
                format_number(thermal_approx_mutual_information(pm.nu_minus, pm.nu_plus), p) + '\n';
    }
    write_text(a.out, text);

    if (!a.couplings_out.empty()) {
        std::string c = "n,omega,c_plus,c_minus\n";
        for (const auto& m : mode_function_couplings(a.r, cfg)) {
            c += std::to_string(m.n) + ',' + format_number(m.omega, p) + ',' + format_number(m.c_plus, p) + ',' +
                 format_number(m.c_minus, p) + '\n';
        }
        write_text(a.couplings_out, c);
    }
    if (!a.surface_out.empty()) {
        const Axis nus = Axis::grid(1.0, a.nu_max, a.surface_count);
        nus.validate("nu");
        std::string s = "nu1,nu2,I_thermal\n";
        for (double n1 : nus.values()) {
            for (double n2 : nus.values()) {
                s += format_number(n1, p) + ',' + format_number(n2, p) + ',' +
                     format_number(thermal_approx_mutual_information(n1, n2), p) + '\n';
            }
        }
        write_text(a.surface_out, s);
    }
    return 0;
}

int cmd_validate() {
    bool ok = true;
    run_validation_suite([&](const CheckResult& c) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) {
            std::cout << " (" << c.detail << ")";
        }
        std::cout << std::endl;
        ok = ok && c.passed;
    });
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Correlation harvesting by two detectors in a periodic cavity", "cavharvest"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--threads", g.threads, "worker threads (output does not depend on it)")->check(CLI::Range(1u, 4096u));
    app.add_flag("--no-cache", g.no_cache, "do not read or write the generator cache");
    app.add_option("--cache-dir", g.cache_dir,
                   std::string("generator cache directory (default: $") + kCacheDirEnv + ")");
    app.add_option("--precision", g.precision, "significant digits in text output")->check(CLI::Range(1, 17));

    std::string config_path;
    std::string sweep_out;
    bool convergence = false;
    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config file");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("--out", sweep_out, "output path (overrides the config)");
    sweep->add_flag("--convergence-check", convergence, "rerun at 2N and report the largest relative drift");

    std::string figure_name;
    std::string figure_out;
    bool figure_list = false;
    auto* figure = app.add_subcommand("figure", "run a figure recipe and check its assertions");
    figure->add_option("name", figure_name, "fig1 .. fig8");
    figure->add_option("--out", figure_out, "output CSV (default: standard output)");
    figure->add_flag("--list", figure_list, "list the recipes");

    CorrfuncArgs cf;
    auto* corrfunc = app.add_subcommand("corrfunc", "tabulate the field correlation function C(r)");
    corrfunc->add_option("--temperatures", cf.temperatures, "temperatures")->delimiter(',')->capture_default_str();
    corrfunc->add_option("--r-min", cf.r_min, "smallest separation")->capture_default_str();
    corrfunc->add_option("--r-max", cf.r_max, "largest separation")->capture_default_str();
    corrfunc->add_option("--count", cf.count, "number of r samples")->capture_default_str();
    corrfunc->add_option("--length", cf.length, "cavity length")->capture_default_str();
    corrfunc->add_option("--n-modes", cf.n_modes, "modes per direction")->capture_default_str();
    corrfunc->add_option("--out", cf.out, "output CSV (default: standard output)");

    DecomposeArgs dc;
    auto* decompose = app.add_subcommand("decompose", "(+)/(-) mode analysis of the detector state");
    decompose->add_option("--r", dc.r, "detector separation")->capture_default_str();
    decompose->add_option("--t", dc.t, "evolution time")->capture_default_str();
    decompose->add_option("--temperatures", dc.temperatures, "temperatures")->delimiter(',')->capture_default_str();
    decompose->add_option("--n-modes", dc.n_modes, "modes per direction")->capture_default_str();
    decompose->add_option("--out", dc.out, "output CSV (default: standard output)");
    decompose->add_option("--couplings-out", dc.couplings_out, "write the (+) and (-) couplings of each field mode");
    decompose->add_option("--surface-out", dc.surface_out, "write I on a (nu1, nu2) grid for thermal (+)/(-) modes");
    decompose->add_option("--nu-max", dc.nu_max, "upper nu of the surface grid")->capture_default_str();
    decompose->add_option("--surface-count", dc.surface_count, "surface grid points per axis")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (sweep->parsed()) {
            return cmd_sweep(g, config_path, sweep_out, convergence);
        }
        if (figure->parsed()) {
            return cmd_figure(g, figure_name, figure_out, figure_list);
        }
        if (corrfunc->parsed()) {
            return cmd_corrfunc(g, cf);
        }
        if (decompose->parsed()) {
            return cmd_decompose(g, dc);
        }
        if (validate->parsed()) {
            return cmd_validate();
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << app.help();
    return 2;
}

}  // namespace cavharvest
