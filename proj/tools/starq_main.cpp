// Scenario-driven verification harness: configures grids, deformation
// profiles and test panels, runs the check suites, and emits machine
// readable reports (report.json / report.csv, optional field dumps).

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starq/intertwiner.hpp"
#include "starq/moyal.hpp"
#include "starq/scenario.hpp"
#include "starq/starexp.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string suite;
    std::string theta;
    std::string grid;
    std::string out_dir;
    std::string golden;
    long long seed = -1;
};

void add_common(CLI::App* app, CommonFlags& fl) {
    app->add_option("--config", fl.config_path, "scenario config file (key = value sections)");
    app->add_option("--suite", fl.suite, "suite name (group, orbit, covariance, product, trace, invariance, star-exp, bch, all)");
    app->add_option("--theta", fl.theta, "comma-separated deformation parameters");
    app->add_option("--grid", fl.grid, "grid size NxM (powers of two)");
    app->add_option("--seed", fl.seed, "seed for randomized cases");
    app->add_option("--out", fl.out_dir, "output directory for reports");
    app->add_option("--golden", fl.golden, "golden report to compare against");
}

starq::ScenarioConfig build_config(const CommonFlags& fl) {
    starq::ScenarioConfig cfg;
    if (!fl.config_path.empty()) cfg = starq::parse_config_file(fl.config_path);
    std::string overrides;
    if (!fl.suite.empty()) overrides += "suite = " + fl.suite + "\n";
    if (!fl.theta.empty()) overrides += "theta = " + fl.theta + "\n";
    if (!fl.grid.empty()) overrides += "grid = " + fl.grid + "\n";
    if (fl.seed >= 0) overrides += "seed = " + std::to_string(fl.seed) + "\n";
    if (!fl.out_dir.empty()) overrides += "out = " + fl.out_dir + "\n";
    if (!fl.golden.empty()) overrides += "golden = " + fl.golden + "\n";
    if (!overrides.empty()) starq::apply_config_text(cfg, overrides, "<cli>");
    cfg.validate();
    return cfg;
}

int emit(const starq::Report& rep, const starq::ScenarioConfig& cfg) {
    int failed = 0;
    for (const auto& c : rep.checks) {
        std::printf("[%s] %-34s value=%.3e %s %.3e  (%.2fs)\n", c.passed ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.mode == starq::PassMode::UpperBound ? "<=" : ">=",
                    c.tolerance, c.runtime_s);
        if (!c.passed) ++failed;
    }
    std::printf("%zu checks, %d failed\n", rep.checks.size(), failed);
    if (!cfg.out_dir.empty()) {
        starq::write_report_files(rep, cfg.out_dir);
        std::printf("reports written to %s\n", cfg.out_dir.c_str());
    }
    if (!cfg.golden_path.empty()) {
        const auto gc = starq::compare_golden(rep, cfg.golden_path);
        if (!gc.ok) {
            for (const auto& m : gc.mismatches) std::fprintf(stderr, "golden mismatch: %s\n", m.c_str());
            return 1;
        }
        std::printf("golden comparison ok\n");
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"starq: verification harness for the deformed product calculus"};
    app.require_subcommand(1);

    CommonFlags run_fl, conv_fl;
    int levels = 3;
    CLI::App* run = app.add_subcommand("run", "run a verification suite");
    add_common(run, run_fl);
    CLI::App* conv = app.add_subcommand("converge", "run refinement studies and report orders");
    add_common(conv, conv_fl);
    conv->add_option("--levels", levels, "number of refinement levels (>= 2)");

    std::string field_name = "gaussian", dump_path = "field.csv", dump_grid;
    double dump_theta = 0.5;
    CLI::App* dump = app.add_subcommand("dump-field", "write a field in the CSV dump format");
    dump->add_option("--field", field_name,
                     "gaussian | moyal-exp-H | star-exp-H | invariant-product");
    dump->add_option("--theta", dump_theta, "deformation parameter");
    dump->add_option("--grid", dump_grid, "grid size NxM");
    dump->add_option("--out", dump_path, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto cfg = build_config(run_fl);
            return emit(starq::run_scenario(cfg), cfg);
        }
        if (conv->parsed()) {
            const auto cfg = build_config(conv_fl);
            return emit(starq::convergence_study(cfg, levels), cfg);
        }
        if (dump->parsed()) {
            starq::GridSpec grid(3.0, 12.0, 256, 256);
            if (!dump_grid.empty()) {
                int na, nl;
                if (std::sscanf(dump_grid.c_str(), "%dx%d", &na, &nl) != 2)
                    throw std::invalid_argument("dump-field: grid must be NxM");
                grid = starq::GridSpec(3.0, 12.0, na, nl);
            }
            starq::SampledField out;
            const auto gauss = starq::make_gaussian_field(1.0, 1.0, 0.0, 0.0);
            if (field_name == "gaussian") {
                out = starq::sample(gauss, grid);
            } else if (field_name == "moyal-exp-H") {
                out = starq::sample(starq::moyal_star_exp(starq::AlgebraElement::H(), 0.5, dump_theta), grid);
            } else if (field_name == "star-exp-H") {
                const auto prof = starq::DeformationProfile::tracial(dump_theta);
                out = starq::sample(starq::star_exp(starq::AlgebraElement::H(), 0.5, prof).as_field(), grid);
            } else if (field_name == "invariant-product") {
                const auto prof = starq::DeformationProfile::tracial(dump_theta);
                const auto f = starq::sample(gauss, grid);
                const auto h = starq::sample(starq::make_gaussian_field(1.4, 0.8, 0.4, 0.0), grid);
                out = starq::invariant_product(f, h, prof);
            } else {
                throw std::invalid_argument("dump-field: unknown field '" + field_name + "'");
            }
            starq::write_field_csv_file(dump_path, out);
            std::printf("wrote %s\n", dump_path.c_str());
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
