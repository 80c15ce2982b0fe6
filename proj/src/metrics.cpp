#include "wsntrack/metrics.hpp"

#include <sstream>
#include <stdexcept>

#include "wsntrack/csv.hpp"
#include "wsntrack/energy.hpp"

namespace wsntrack {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Centralized: return "centralized";
        case Strategy::Decentralized: return "decentralized";
        case Strategy::Improved: return "improved";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "centralized") return Strategy::Centralized;
    if (s == "decentralized") return Strategy::Decentralized;
    if (s == "improved") return Strategy::Improved;
    throw std::invalid_argument("unknown strategy: " + s);
}

double class_consumed_mAh(const MetricsReport& r, NodeRole role) {
    double sum = 0.0;
    for (const auto& row : r.node_energy)
        if (row.role == role) sum += row.consumed_mAh;
    return sum;
}

int class_count(const MetricsReport& r, NodeRole role) {
    int n = 0;
    for (const auto& row : r.node_energy)
        if (row.role == role) ++n;
    return n;
}

double mean_class_consumed_mAh(const MetricsReport& r, NodeRole role) {
    int n = class_count(r, role);
    return n == 0 ? 0.0 : class_consumed_mAh(r, role) / n;
}

double mean_class_battery_life_s(const MetricsReport& r, NodeRole role, double init_mAh,
                                 double round_period_s) {
    if (r.rounds_executed == 0) return battery_life(0.0, init_mAh, round_period_s);
    double per_round = mean_class_consumed_mAh(r, role) / r.rounds_executed;
    return battery_life(per_round, init_mAh, round_period_s);
}

namespace {

NodeRole role_from_string(const std::string& s) {
    if (s == "sink") return NodeRole::Sink;
    if (s == "reference") return NodeRole::Reference;
    if (s == "target") return NodeRole::Target;
    throw std::runtime_error("unknown node class: " + s);
}

std::vector<NodeId> split_ids(const std::string& s) {
    std::vector<NodeId> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ';')) out.push_back(std::stoi(tok));
    return out;
}

std::string join_ids(const std::vector<NodeId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(ids[i]);
    }
    return out;
}

}  // namespace

std::string metrics_csv(const MetricsReport& r) {
    std::string out = csv::join_row({"round", "strategy", "local_msgs", "group_msgs",
                                     "global_msgs", "sink_msgs", "drops",
                                     "energy_consumed_total"});
    for (const auto& row : r.rounds) {
        out += csv::join_row({std::to_string(row.round), to_string(r.strategy),
                              std::to_string(row.local_msgs), std::to_string(row.group_msgs),
                              std::to_string(row.global_msgs), std::to_string(row.sink_msgs),
                              std::to_string(row.drops),
                              csv::format_double(row.energy_consumed_total)});
    }
    return out;
}

std::string energy_csv(const MetricsReport& r) {
    std::string out = csv::join_row({"node_id", "class", "tx_count", "rx_count",
                                     "consumed_mAh", "remaining_mAh", "est_lifetime_s"});
    for (const auto& row : r.node_energy) {
        out += csv::join_row({std::to_string(row.node_id), to_string(row.role),
                              std::to_string(row.tx_count), std::to_string(row.rx_count),
                              csv::format_double(row.consumed_mAh),
                              csv::format_double(row.remaining_mAh),
                              csv::format_double(row.est_lifetime_s)});
    }
    return out;
}

std::string localization_csv(const MetricsReport& r) {
    std::string out = csv::join_row({"round", "target_id", "error_m"});
    for (const auto& row : r.localization) {
        out += csv::join_row({std::to_string(row.round), std::to_string(row.target_id),
                              row.error_m ? csv::format_double(*row.error_m) : "FAIL"});
    }
    return out;
}

std::string groups_csv(const MetricsReport& r) {
    std::string out = csv::join_row({"round", "leader_id", "member_ids"});
    for (const auto& g : r.groups) {
        out += csv::join_row(
            {std::to_string(g.round), std::to_string(g.leader), join_ids(g.members)});
    }
    return out;
}

std::vector<RoundMetrics> parse_metrics_csv(const std::string& text) {
    csv::Table t = csv::parse(text);
    std::vector<RoundMetrics> out;
    for (const auto& row : t.rows) {
        if (row.size() != 8) throw std::runtime_error("metrics csv: bad row width");
        RoundMetrics m;
        m.round = std::stoi(row[0]);
        m.local_msgs = std::stoull(row[2]);
        m.group_msgs = std::stoull(row[3]);
        m.global_msgs = std::stoull(row[4]);
        m.sink_msgs = std::stoull(row[5]);
        m.drops = std::stoull(row[6]);
        m.energy_consumed_total = csv::parse_double(row[7]);
        out.push_back(m);
    }
    return out;
}

std::vector<NodeEnergyRow> parse_energy_csv(const std::string& text) {
    csv::Table t = csv::parse(text);
    std::vector<NodeEnergyRow> out;
    for (const auto& row : t.rows) {
        if (row.size() != 7) throw std::runtime_error("energy csv: bad row width");
        NodeEnergyRow e;
        e.node_id = std::stoi(row[0]);
        e.role = role_from_string(row[1]);
        e.tx_count = std::stoull(row[2]);
        e.rx_count = std::stoull(row[3]);
        e.consumed_mAh = csv::parse_double(row[4]);
        e.remaining_mAh = csv::parse_double(row[5]);
        e.est_lifetime_s = csv::parse_double(row[6]);
        out.push_back(e);
    }
    return out;
}

std::vector<LocalizationRow> parse_localization_csv(const std::string& text) {
    csv::Table t = csv::parse(text);
    std::vector<LocalizationRow> out;
    for (const auto& row : t.rows) {
        if (row.size() != 3) throw std::runtime_error("localization csv: bad row width");
        LocalizationRow l;
        l.round = std::stoi(row[0]);
        l.target_id = std::stoi(row[1]);
        if (row[2] != "FAIL") l.error_m = csv::parse_double(row[2]);
        out.push_back(l);
    }
    return out;
}

std::vector<GroupLogEntry> parse_groups_csv(const std::string& text) {
    csv::Table t = csv::parse(text);
    std::vector<GroupLogEntry> out;
    for (const auto& row : t.rows) {
        if (row.size() != 3) throw std::runtime_error("groups csv: bad row width");
        GroupLogEntry g;
        g.round = std::stoi(row[0]);
        g.leader = std::stoi(row[1]);
        g.members = split_ids(row[2]);
        out.push_back(g);
    }
    return out;
}

}  // namespace wsntrack
