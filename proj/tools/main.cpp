// wsntrack: multi-target tracking simulator for ZigBee-class sensor networks.
//
// Subcommands:
//   run      one simulation, full CSV/manifest output
//   compare  all three strategies on one shared topology and trajectory set
//   predict  closed-form message counts and energy (no simulation)
//   sweep    compare across a parameter grid, long-form CSV
//
// Exit codes: 0 success, 2 configuration error, 3 topology error, 4 internal.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsntrack/analytics.hpp"
#include "wsntrack/csv.hpp"
#include "wsntrack/engine.hpp"
#include "wsntrack/experiment.hpp"

namespace {

using namespace wsntrack;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTopology = 3;
constexpr int kExitInternal = 4;

// Flags shared by the simulating subcommands. Each one overrides the
// matching key of the config file (or the built-in default).
struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    std::optional<double> frequency;
    std::optional<int> targets;
    std::optional<int> references;
    std::optional<double> loss_rate;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "Config file (key = value lines)");
    cmd->add_option("--seed", f.seed, "Master random seed");
    cmd->add_option("--duration", f.duration, "Observation window l, seconds");
    cmd->add_option("--frequency", f.frequency, "Reporting period f, seconds");
    cmd->add_option("--targets", f.targets, "Number of mobile targets");
    cmd->add_option("--references", f.references, "Number of reference nodes");
    cmd->add_option("--loss-rate", f.loss_rate, "Per-hop loss probability [0,1)");
}

SimConfig resolve_config(const CommonFlags& f) {
    RawSettings raw;
    if (!f.config_path.empty()) raw = load_settings_file(f.config_path);
    if (f.seed) raw["seed"] = std::to_string(*f.seed);
    if (f.duration) raw["duration_s"] = csv::format_double(*f.duration);
    if (f.frequency) raw["reporting_period_s"] = csv::format_double(*f.frequency);
    if (f.targets) raw["num_targets"] = std::to_string(*f.targets);
    if (f.references) raw["num_references"] = std::to_string(*f.references);
    if (f.loss_rate) raw["loss_rate"] = csv::format_double(*f.loss_rate);
    return validate_config(raw);
}

std::filesystem::path pick_out_dir(const std::string& requested,
                                   const std::string& fallback) {
    return unique_run_dir(requested.empty() ? std::filesystem::path("runs") / fallback
                                            : std::filesystem::path(requested));
}

int cmd_run(const CommonFlags& flags, const std::string& strategy_name,
            const std::string& out_dir, bool dump_groups) {
    SimConfig cfg = resolve_config(flags);
    Strategy strategy = strategy_from_string(strategy_name);
    MetricsReport report = run_simulation(cfg, strategy);

    std::filesystem::path dir = pick_out_dir(
        out_dir, strategy_name + "_seed" + std::to_string(cfg.seed));
    RunArtifacts art = write_run_outputs(cfg, report, dir, dump_groups);
    std::cout << run_summary(cfg, report) << "outputs: " << art.dir.string() << "\n";
    return kExitOk;
}

int cmd_compare(const CommonFlags& flags, const std::string& out_dir) {
    SimConfig cfg = resolve_config(flags);
    StrategyComparison c = compare_strategies(cfg);
    std::string table = comparison_csv(c, cfg);
    std::cout << table;
    if (!out_dir.empty()) {
        std::filesystem::path dir =
            pick_out_dir(out_dir, "compare_seed" + std::to_string(cfg.seed));
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory: " + dir.string());
        for (const MetricsReport* r :
             {&c.centralized, &c.decentralized, &c.improved})
            write_run_outputs(cfg, *r, dir / to_string(r->strategy), false);
        std::ofstream out(dir / "comparison.csv", std::ios::binary);
        if (!out) throw ConfigError("cannot write output file: comparison.csv");
        out << table;
        std::cout << "outputs: " << dir.string() << "\n";
    }
    return kExitOk;
}

int cmd_predict(const AnalyticsInputs& base, std::optional<double> lf) {
    AnalyticsInputs in = base;
    if (lf) {
        in.l = *lf;  // interpret --lf as the round count directly
        in.f = 1.0;
    }
    CostReport literal = evaluate_costs(in, CountMode::PaperLiteral);
    CostReport sim = evaluate_costs(in, CountMode::SimulatedCeiling);

    auto line = [](const char* name, double a, double b) {
        std::cout << std::left << std::setw(16) << name << std::right << std::setw(16)
                  << csv::format_double(a) << std::setw(16) << csv::format_double(b)
                  << "\n";
    };
    std::cout << std::left << std::setw(16) << "" << std::right << std::setw(16)
              << "paper-literal" << std::setw(16) << "simulated" << "\n";
    line("n1 (local)", literal.n1, sim.n1);
    line("n2 (reports)", literal.n2, sim.n2);
    line("n3 (group)", literal.n3, sim.n3);
    line("n4 (global)", literal.n4, sim.n4);
    line("E centralized", literal.e_centralized, sim.e_centralized);
    line("E decentralized", literal.e_decentralized, sim.e_decentralized);
    line("E improved", literal.e_improved, sim.e_improved);

    std::cout << "\n" << csv::join_row({"quantity", "paper_literal", "simulated"});
    auto row = [](const char* name, double a, double b) {
        std::cout << csv::join_row(
            {name, csv::format_double(a), csv::format_double(b)});
    };
    row("n1", literal.n1, sim.n1);
    row("n2", literal.n2, sim.n2);
    row("n3", literal.n3, sim.n3);
    row("n4", literal.n4, sim.n4);
    row("e_centralized", literal.e_centralized, sim.e_centralized);
    row("e_decentralized", literal.e_decentralized, sim.e_decentralized);
    row("e_improved", literal.e_improved, sim.e_improved);
    return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, const std::string& variable,
              const std::vector<double>& values, std::vector<std::uint64_t> seeds,
              const std::string& out_dir) {
    SimConfig cfg = resolve_config(flags);
    if (seeds.empty()) seeds.push_back(cfg.seed);
    std::vector<SweepRow> rows =
        run_sweep(cfg, sweep_variable_from_string(variable), values, seeds);
    std::string table = sweep_csv(rows);
    std::cout << table;
    if (!out_dir.empty()) {
        std::filesystem::path dir = pick_out_dir(out_dir, "sweep");
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory: " + dir.string());
        std::ofstream out(dir / "sweep.csv", std::ios::binary);
        if (!out) throw ConfigError("cannot write output file: sweep.csv");
        out << table;
        std::cout << "outputs: " << dir.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-target tracking simulator (centralized, decentralized and "
                 "grouped-leader strategies) with closed-form cost cross-checks"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_strategy = "improved";
    std::string run_out_dir;
    bool run_dump_groups = false;
    CLI::App* run = app.add_subcommand("run", "Simulate one strategy");
    add_common_flags(run, run_flags);
    run->add_option("--strategy", run_strategy, "Strategy to simulate")
        ->check(CLI::IsMember({"centralized", "decentralized", "improved"}));
    run->add_option("--out-dir", run_out_dir, "Output directory (made unique)");
    run->add_flag("--dump-groups", run_dump_groups, "Also write groups.csv");

    CommonFlags cmp_flags;
    std::string cmp_out_dir;
    CLI::App* compare =
        app.add_subcommand("compare", "Run all three strategies on one topology");
    add_common_flags(compare, cmp_flags);
    compare->add_option("--out-dir", cmp_out_dir, "Output directory (made unique)");

    AnalyticsInputs pin;
    std::optional<double> predict_lf;
    CLI::App* predict =
        app.add_subcommand("predict", "Closed-form message counts and energy");
    predict->add_option("-r,--coverage", pin.r, "Covering references per target")
        ->check(CLI::NonNegativeNumber);
    predict->add_option("-m,--targets", pin.m, "Number of mobile targets")
        ->check(CLI::NonNegativeNumber);
    predict->add_option("-l,--duration", pin.l, "Observation window, seconds")
        ->check(CLI::NonNegativeNumber);
    predict->add_option("-f,--frequency", pin.f, "Reporting period, seconds")
        ->check(CLI::PositiveNumber);
    predict->add_option("--lf", predict_lf, "Round count l/f (overrides -l/-f)")
        ->check(CLI::NonNegativeNumber);
    predict->add_option("--hops", pin.h, "Average hops to the sink")
        ->check(CLI::NonNegativeNumber);
    predict->add_option("--capacity", pin.capacity, "Locations per aggregate packet")
        ->check(CLI::PositiveNumber);
    predict->add_option("--tx-cost", pin.tx_cost, "Per-packet transmit cost");
    predict->add_option("--rx-cost", pin.rx_cost, "Per-packet receive cost");

    CommonFlags sweep_flags;
    std::string sweep_var;
    std::vector<double> sweep_values;
    std::vector<std::uint64_t> sweep_seeds;
    std::string sweep_out_dir;
    CLI::App* sweep = app.add_subcommand("sweep", "Compare across a parameter grid");
    add_common_flags(sweep, sweep_flags);
    sweep->add_option("--variable", sweep_var, "Swept variable")
        ->required()
        ->check(CLI::IsMember({"targets", "references", "frequency"}));
    sweep->add_option("--values", sweep_values, "Grid values")->required();
    sweep->add_option("--seeds", sweep_seeds, "Seeds (default: config seed)");
    sweep->add_option("--out-dir", sweep_out_dir, "Output directory (made unique)");

    try {
        app.parse(argc, argv);
        if (run->parsed())
            return cmd_run(run_flags, run_strategy, run_out_dir, run_dump_groups);
        if (compare->parsed()) return cmd_compare(cmp_flags, cmp_out_dir);
        if (predict->parsed()) return cmd_predict(pin, predict_lf);
        if (sweep->parsed())
            return cmd_sweep(sweep_flags, sweep_var, sweep_values, sweep_seeds,
                             sweep_out_dir);
        return kExitInternal;  // unreachable with require_subcommand(1)
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse diagnostic
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TopologyError& e) {
        std::cerr << "topology error: " << e.what() << "\n";
        return kExitTopology;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
