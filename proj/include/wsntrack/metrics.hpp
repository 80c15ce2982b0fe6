#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsntrack/topology.hpp"

namespace wsntrack {

enum class Strategy { Centralized, Decentralized, Improved };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

enum class MessageKind { LocalExchange, Reading, LocationReport, GroupReport, GlobalAggregate };

struct RoundMetrics {
    int round = 0;
    std::uint64_t local_msgs = 0;
    std::uint64_t group_msgs = 0;
    std::uint64_t global_msgs = 0;
    std::uint64_t sink_msgs = 0;   // delivered to the sink this round
    std::uint64_t drops = 0;
    double energy_consumed_total = 0.0;  // network total, cumulative

    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct LocalizationRow {
    int round = 0;
    NodeId target_id = 0;
    std::optional<double> error_m;  // nullopt -> FAIL

    friend bool operator==(const LocalizationRow&, const LocalizationRow&) = default;
};

struct NodeEnergyRow {
    NodeId node_id = 0;
    NodeRole role = NodeRole::Reference;
    std::uint64_t tx_count = 0;
    std::uint64_t rx_count = 0;
    double consumed_mAh = 0.0;
    double remaining_mAh = 0.0;
    double est_lifetime_s = 0.0;  // +inf when the node never consumed

    friend bool operator==(const NodeEnergyRow&, const NodeEnergyRow&) = default;
};

struct GroupLogEntry {
    int round = 0;
    NodeId leader = 0;
    std::vector<NodeId> members;  // leader included, ascending ids

    friend bool operator==(const GroupLogEntry&, const GroupLogEntry&) = default;
};

struct MetricsReport {
    Strategy strategy = Strategy::Centralized;
    int rounds_executed = 0;

    std::vector<RoundMetrics> rounds;
    // Sink-bound messages *generated* per round (readings, reports or
    // aggregates, whichever the strategy emits). sink_msgs in `rounds` holds
    // the delivered count; under loss the two differ.
    std::vector<std::uint64_t> sink_bound_sent;
    std::vector<LocalizationRow> localization;
    std::vector<NodeEnergyRow> node_energy;
    std::vector<GroupLogEntry> groups;

    std::uint64_t total_local = 0;
    std::uint64_t total_group = 0;
    std::uint64_t total_global = 0;
    std::uint64_t total_readings = 0;
    std::uint64_t total_reports = 0;
    std::uint64_t total_sink_delivered = 0;
    std::uint64_t sink_readings = 0;    // delivered, by kind
    std::uint64_t sink_reports = 0;
    std::uint64_t sink_aggregates = 0;
    std::uint64_t total_drops = 0;
    std::uint64_t target_to_target_msgs = 0;  // messages with target src and dst

    std::uint64_t localization_failures = 0;
    std::uint64_t fallback_elections = 0;
    std::uint64_t unreachable_skips = 0;

    // Mean hop-path length over sink-delivered messages.
    double mean_hops = 0.0;
    std::uint64_t trajectory_digest = 0;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Aggregates over the final per-node energy rows.
double class_consumed_mAh(const MetricsReport& r, NodeRole role);
int class_count(const MetricsReport& r, NodeRole role);
double mean_class_consumed_mAh(const MetricsReport& r, NodeRole role);

// Lifetime of the class-average node: init / (mean per-round drain) * period.
// Robust to individual idle nodes whose own lifetime is infinite.
double mean_class_battery_life_s(const MetricsReport& r, NodeRole role, double init_mAh,
                                 double round_period_s);

// ---- CSV emission (fixed column orders, LF endings) ----
// metrics:      round,strategy,local_msgs,group_msgs,global_msgs,sink_msgs,drops,energy_consumed_total
// energy:       node_id,class,tx_count,rx_count,consumed_mAh,remaining_mAh,est_lifetime_s
// localization: round,target_id,error_m   (FAIL for failed rounds)
// groups:       round,leader_id,member_ids  (';'-joined)
std::string metrics_csv(const MetricsReport& r);
std::string energy_csv(const MetricsReport& r);
std::string localization_csv(const MetricsReport& r);
std::string groups_csv(const MetricsReport& r);

// Inverse parsers; together with the emitters these round-trip exactly.
std::vector<RoundMetrics> parse_metrics_csv(const std::string& text);
std::vector<NodeEnergyRow> parse_energy_csv(const std::string& text);
std::vector<LocalizationRow> parse_localization_csv(const std::string& text);
std::vector<GroupLogEntry> parse_groups_csv(const std::string& text);

}  // namespace wsntrack
