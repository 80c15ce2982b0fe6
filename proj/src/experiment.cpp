#include "wsntrack/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "wsntrack/csv.hpp"
#include "wsntrack/engine.hpp"

namespace wsntrack {

namespace {

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace

std::filesystem::path unique_run_dir(const std::filesystem::path& base) {
    if (!std::filesystem::exists(base)) return base;
    for (int i = 2;; ++i) {
        std::filesystem::path candidate = base;
        candidate += "_" + std::to_string(i);
        if (!std::filesystem::exists(candidate)) return candidate;
    }
}

RunArtifacts write_run_outputs(const SimConfig& cfg, const MetricsReport& report,
                               const std::filesystem::path& dir, bool dump_groups) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + dir.string());

    RunArtifacts art;
    art.dir = dir;
    art.manifest = dir / "manifest.json";
    art.metrics = dir / "metrics.csv";
    art.energy = dir / "energy.csv";
    art.localization = dir / "localization.csv";
    art.summary = dir / "summary.txt";
    if (dump_groups) art.groups = dir / "groups.csv";

    nlohmann::json manifest;
    manifest["strategy"] = to_string(report.strategy);
    manifest["seed"] = cfg.seed;
    manifest["created"] = utc_timestamp();
    manifest["rounds_executed"] = report.rounds_executed;
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [key, value] : to_settings(cfg)) config[key] = value;
    manifest["config"] = config;
    nlohmann::json outputs = nlohmann::json::array();
    outputs.push_back("metrics.csv");
    outputs.push_back("energy.csv");
    outputs.push_back("localization.csv");
    if (dump_groups) outputs.push_back("groups.csv");
    outputs.push_back("summary.txt");
    manifest["outputs"] = outputs;

    // manifest first: a crashed run still leaves a self-describing directory
    write_file(art.manifest, manifest.dump(2) + "\n");
    write_file(art.metrics, metrics_csv(report));
    write_file(art.energy, energy_csv(report));
    write_file(art.localization, localization_csv(report));
    if (dump_groups) write_file(art.groups, groups_csv(report));
    write_file(art.summary, run_summary(cfg, report));
    return art;
}

std::string run_summary(const SimConfig& cfg, const MetricsReport& r) {
    std::uint64_t sink_bound = 0;
    for (std::uint64_t v : r.sink_bound_sent) sink_bound += v;

    int loc_ok = 0, loc_fail = 0;
    double err_sum = 0.0;
    for (const LocalizationRow& row : r.localization) {
        if (row.error_m) {
            ++loc_ok;
            err_sum += *row.error_m;
        } else {
            ++loc_fail;
        }
    }

    std::ostringstream out;
    out << "strategy:             " << to_string(r.strategy) << "\n"
        << "rounds:               " << r.rounds_executed << "\n"
        << "targets/references:   " << class_count(r, NodeRole::Target) << "/"
        << class_count(r, NodeRole::Reference) << "\n"
        << "local messages:       " << r.total_local << "\n"
        << "group messages:       " << r.total_group << "\n"
        << "global messages:      " << r.total_global << "\n"
        << "sink-bound generated: " << sink_bound << "\n"
        << "sink delivered:       " << r.total_sink_delivered << "\n"
        << "drops:                " << r.total_drops << "\n"
        << "target-to-target:     " << r.target_to_target_msgs << "\n"
        << "mean hops (sink):     " << csv::format_double(r.mean_hops) << "\n"
        << "localizations ok:     " << loc_ok << "\n"
        << "localization failures:" << loc_fail << "\n"
        << "mean error (m):       "
        << csv::format_double(loc_ok ? err_sum / loc_ok : 0.0) << "\n"
        << "energy consumed (mAh):"
        << csv::format_double(r.rounds.empty() ? 0.0 : r.rounds.back().energy_consumed_total)
        << "\n"
        << "mean ref battery (s): "
        << csv::format_double(mean_class_battery_life_s(r, NodeRole::Reference,
                                                        cfg.init_energy_mAh,
                                                        cfg.reporting_period_s))
        << "\n"
        << "mean tgt battery (s): "
        << csv::format_double(mean_class_battery_life_s(r, NodeRole::Target,
                                                        cfg.init_energy_mAh,
                                                        cfg.reporting_period_s))
        << "\n";
    return out.str();
}

StrategyComparison compare_strategies(const SimConfig& cfg) {
    StrategyComparison c;
    c.centralized = run_simulation(cfg, Strategy::Centralized);
    c.decentralized = run_simulation(cfg, Strategy::Decentralized);
    c.improved = run_simulation(cfg, Strategy::Improved);

    if (c.centralized.trajectory_digest != c.decentralized.trajectory_digest ||
        c.centralized.trajectory_digest != c.improved.trajectory_digest)
        throw std::logic_error("strategies diverged on shared trajectories");

    // Stochastic loss desynchronizes which targets localize in each strategy,
    // so the per-round ordering is only guaranteed on drop-free runs.
    if (cfg.loss_rate == 0.0) {
        for (int k = 0; k < c.centralized.rounds_executed; ++k) {
            std::uint64_t cn = c.centralized.sink_bound_sent[k];
            std::uint64_t dc = c.decentralized.sink_bound_sent[k];
            std::uint64_t im = c.improved.sink_bound_sent[k];
            if (!(im <= dc && dc <= cn))
                throw std::logic_error(
                    "sink-bound ordering violated in round " + std::to_string(k + 1));
        }
    }
    return c;
}

std::string comparison_csv(const StrategyComparison& c, const SimConfig& cfg) {
    std::string out = csv::join_row({"strategy", "sink_msgs", "target_to_target_msgs",
                                     "mean_reference_battery_life_s",
                                     "mean_target_consumed_mAh"});
    for (const MetricsReport* r : {&c.centralized, &c.decentralized, &c.improved}) {
        out += csv::join_row(
            {to_string(r->strategy), std::to_string(r->total_sink_delivered),
             std::to_string(r->target_to_target_msgs),
             csv::format_double(mean_class_battery_life_s(
                 *r, NodeRole::Reference, cfg.init_energy_mAh, cfg.reporting_period_s)),
             csv::format_double(mean_class_consumed_mAh(*r, NodeRole::Target))});
    }
    return out;
}

std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::Targets: return "targets";
        case SweepVariable::References: return "references";
        case SweepVariable::Frequency: return "frequency";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "targets") return SweepVariable::Targets;
    if (s == "references") return SweepVariable::References;
    if (s == "frequency") return SweepVariable::Frequency;
    throw ConfigError("unknown sweep variable: " + s +
                      " (expected targets, references or frequency)");
}

std::vector<SweepRow> run_sweep(const SimConfig& base, SweepVariable variable,
                                const std::vector<double>& values,
                                const std::vector<std::uint64_t>& seeds) {
    if (values.empty() || seeds.empty()) throw ConfigError("sweep grid is empty");

    std::vector<SweepRow> rows;
    for (double value : values) {
        SimConfig cfg = base;
        switch (variable) {
            case SweepVariable::Targets:
                cfg.num_targets = static_cast<int>(value);
                break;
            case SweepVariable::References:
                cfg.num_references = static_cast<int>(value);
                break;
            case SweepVariable::Frequency:
                cfg.reporting_period_s = value;
                break;
        }
        // revalidate: a sweep can reach invalid points (e.g. frequency 0)
        SimConfig checked = validate_config(to_settings(cfg));
        for (std::uint64_t seed : seeds) {
            checked.seed = seed;
            StrategyComparison c = compare_strategies(checked);
            for (const MetricsReport* r :
                 {&c.centralized, &c.decentralized, &c.improved}) {
                auto push = [&](const char* metric, double v) {
                    rows.push_back(SweepRow{value, r->strategy, metric, v, seed});
                };
                push("sink_msgs", static_cast<double>(r->total_sink_delivered));
                push("target_to_target_msgs",
                     static_cast<double>(r->target_to_target_msgs));
                push("mean_reference_battery_life_s",
                     mean_class_battery_life_s(*r, NodeRole::Reference,
                                               checked.init_energy_mAh,
                                               checked.reporting_period_s));
                push("mean_target_consumed_mAh",
                     mean_class_consumed_mAh(*r, NodeRole::Target));
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tuple(a.variable, to_string(a.strategy), a.metric, a.seed) <
               std::tuple(b.variable, to_string(b.strategy), b.metric, b.seed);
    });
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = csv::join_row({"variable", "strategy", "metric", "value", "seed"});
    for (const SweepRow& r : rows)
        out += csv::join_row({csv::format_double(r.variable), to_string(r.strategy),
                              r.metric, csv::format_double(r.value),
                              std::to_string(r.seed)});
    return out;
}

}  // namespace wsntrack
