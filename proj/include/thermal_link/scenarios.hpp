// scenarios.hpp — built-in figure scenarios, generic parameter sweeps, CSV
// emission, and the diagnose report. Sweep points run concurrently; output
// ordering and bytes are deterministic regardless of worker count.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/correlations.hpp"
#include "thermal_link/dissipation.hpp"
#include "thermal_link/dynamics.hpp"
#include "thermal_link/params.hpp"
#include "thermal_link/spectral.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thermal_link {

struct TimeGridSpec {
    double lo = 1e-2;
    double hi = 1e7;
    int points_per_decade = 60;
    std::vector<double> explicit_times;  // overrides the log grid when non-empty

    std::vector<double> make() const {
        return explicit_times.empty() ? log_time_grid(lo, hi, points_per_decade)
                                      : explicit_times;
    }
};

struct BathSetting {
    enum class Kind { temperature, nbar };
    Kind kind = Kind::temperature;
    double value = 0.0;

    static BathSetting temp(double t) { return {Kind::temperature, t}; }
    static BathSetting occupancy(double n) { return {Kind::nbar, n}; }
};

struct SweepPoint {
    std::vector<std::pair<std::string, double>> labels;  // CSV key columns
    SystemParams params;
    std::array<BathSetting, 3> baths{};  // resolved against omega_bar_65 at run time
};

struct ScenarioSpec {
    std::string name;
    TimeGridSpec times;
    std::vector<SweepPoint> points;
    bool asymmetric_diagnostic = false;  // adds the QD_alt column
    bool with_inset = false;             // also emit a late-time sweep CSV
};

struct PointResult {
    std::vector<std::pair<std::string, double>> labels;
    SystemParams resolved_params;
    std::vector<double> times;
    std::vector<CorrelationRecord> records;
    // Dressed-state health summaries for the invariant suite.
    double max_trace_error = 0.0;
    double min_population = 0.0;
    double max_offdiagonal = 0.0;
};

struct SweepResult {
    std::string scenario;
    std::vector<std::string> key_names;
    std::vector<PointResult> points;
    bool asymmetric_diagnostic = false;
    std::uint64_t params_hash = 0;
};

struct RunOptions {
    std::string out_dir = ".";
    std::optional<double> nbar_override;
    std::optional<std::array<double, 3>> temps_override;
    std::optional<TimeGridSpec> times;
    int workers = 0;  // 0 = hardware concurrency
    bool dump_spectrum = false;
    bool dump_rates = false;
};

const std::vector<std::string>& scenario_names();

// Throws usage_error (listing the known names) for unknown scenarios.
ScenarioSpec builtin_scenario(const std::string& name, const RunOptions& options = {});

// Late-time occupancy sweep companion for scenarios flagged with_inset.
ScenarioSpec inset_companion(const ScenarioSpec& spec);

SweepResult execute(const ScenarioSpec& spec, int workers = 0);

// Compute a scenario without touching the filesystem.
SweepResult run_scenario_data(const std::string& name, const RunOptions& options = {});

// Compute and write CSV files (plus optional dumps); returns written paths.
std::vector<std::string> run_scenario(const std::string& name,
                                      const RunOptions& options = {});

// Generic Cartesian sweep over parameter keys; recognised keys are the
// SystemParams fields plus nbar (all baths) and nbar1/nbar2/nbar3.
ScenarioSpec make_sweep(const ParamsFile& base,
                        const std::vector<std::pair<std::string, std::vector<double>>>& vary,
                        const TimeGridSpec& times);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_spectrum_csv(const DressedBasis& dressed, std::ostream& out);
void write_rates_csv(const DressedBasis& dressed, const TransitionRates& rates,
                     std::ostream& out);

// Spectrum, rates, RWA check, KMS ratios, steady state, oracle residual.
void diagnose(const ParamsFile& input, std::ostream& out);

}  // namespace thermal_link
