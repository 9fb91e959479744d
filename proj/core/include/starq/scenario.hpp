#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "starq/grid.hpp"
#include "starq/orbit.hpp"
#include "starq/profile.hpp"

namespace starq {

// Declarative run description; fully deterministic for a fixed seed.
struct ScenarioConfig {
    GridSpec grid{3.0, 12.0, 256, 256};
    std::vector<double> theta_list{0.5};
    std::string profile = "tracial";  // tracial | unit
    std::string suite = "all";
    std::map<std::string, double> tolerances;  // per-suite overrides
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string golden_path;

    void validate() const;  // throws std::invalid_argument with diagnostics
};

enum class PassMode { UpperBound, LowerBound };

struct CheckRecord {
    std::string name;
    std::string tag;  // identity tag, see the README index
    std::string inputs_digest;
    double value = 0.0;
    double tolerance = 0.0;
    PassMode mode = PassMode::UpperBound;
    bool passed = false;
    double runtime_s = 0.0;
};

struct Report {
    std::string kind = "run";  // run | converge
    std::string suite;
    std::string profile;
    std::string grid_str;
    std::vector<double> theta_list;
    std::uint64_t seed = 1;
    std::vector<CheckRecord> checks;

    bool all_passed() const;
};

Report run_scenario(const ScenarioConfig& cfg);

// Repeats selected checks on refined discretizations (doubled grids, halved
// steps, halved theta) and reports empirical convergence orders.
Report convergence_study(const ScenarioConfig& cfg, int levels);

ScenarioConfig parse_config_file(const std::string& path);
void apply_config_text(ScenarioConfig& cfg, const std::string& text, const std::string& origin);

std::string report_to_json(const Report& r, bool with_timestamp = true);
std::string report_to_csv(const Report& r);
void write_report_files(const Report& r, const std::string& out_dir);

struct GoldenCompare {
    bool ok = true;
    std::vector<std::string> mismatches;
};
GoldenCompare compare_golden(const Report& r, const std::string& golden_path, double rel_tol = 1e-9);

// Shared test fields: Schwartz-class Gaussians with closed-form jets.
AnalyticField make_gaussian_field(double a_scale, double l_scale, double l_center,
                                  double l_modulation);
std::vector<AnalyticField> standard_panel();

}  // namespace starq
