#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wsntrack/config.hpp"
#include "wsntrack/metrics.hpp"

namespace wsntrack {

// Returns `base` if it does not exist yet, otherwise base_2, base_3, ...
// (first free suffix). Does not create the directory.
std::filesystem::path unique_run_dir(const std::filesystem::path& base);

struct RunArtifacts {
    std::filesystem::path dir;
    std::filesystem::path manifest;      // manifest.json, written first
    std::filesystem::path metrics;       // metrics.csv
    std::filesystem::path energy;        // energy.csv
    std::filesystem::path localization;  // localization.csv
    std::filesystem::path groups;        // groups.csv, only when requested
    std::filesystem::path summary;       // summary.txt
};

// Creates `dir` and writes the manifest (strategy, seed, config snapshot,
// timestamp, output list) before any result file. Unwritable paths throw
// ConfigError.
RunArtifacts write_run_outputs(const SimConfig& cfg, const MetricsReport& report,
                               const std::filesystem::path& dir, bool dump_groups);

// Human-readable digest of one run.
std::string run_summary(const SimConfig& cfg, const MetricsReport& report);

struct StrategyComparison {
    MetricsReport centralized;
    MetricsReport decentralized;
    MetricsReport improved;
};

// Runs all three strategies on identical topology and trajectories (the
// shared seed guarantees it; the trajectory digests are cross-checked). On
// drop-free runs also asserts, per round, that generated sink-bound counts
// order improved <= decentralized <= centralized. Violations of either check
// throw std::logic_error: they indicate an engine defect, not bad input.
StrategyComparison compare_strategies(const SimConfig& cfg);

// Side-by-side CSV, one row per strategy:
// strategy,sink_msgs,target_to_target_msgs,mean_reference_battery_life_s,mean_target_consumed_mAh
std::string comparison_csv(const StrategyComparison& c, const SimConfig& cfg);

enum class SweepVariable { Targets, References, Frequency };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

struct SweepRow {
    double variable = 0.0;  // swept value at this grid point
    Strategy strategy = Strategy::Centralized;
    std::string metric;
    double value = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// compare_strategies at every (value, seed) grid point; four metrics per
// strategy per point (the comparison_csv columns). Rows come back sorted by
// (variable, strategy, metric, seed) so concurrent execution of points could
// never change the output. Empty grids throw ConfigError.
std::vector<SweepRow> run_sweep(const SimConfig& base, SweepVariable variable,
                                const std::vector<double>& values,
                                const std::vector<std::uint64_t>& seeds);

// Long form: variable,strategy,metric,value,seed
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace wsntrack
