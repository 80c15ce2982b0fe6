#include "wsntrack/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsntrack/protocols.hpp"

namespace wsntrack {

namespace {

ChannelParams channel_from_config(const SimConfig& cfg) {
    ChannelParams p;
    p.rss_ref_dbm = cfg.rss_ref_dbm;
    p.ref_distance_m = cfg.ref_distance_m;
    p.path_loss_exponent = cfg.path_loss_exponent;
    p.noise_sigma_db = cfg.noise_sigma_db;
    p.radio_range_m = cfg.radio_range_m;
    return p;
}

}  // namespace

Engine::Engine(const SimConfig& cfg) : Engine(cfg, build_grid_topology(cfg)) {}

Engine::Engine(const SimConfig& cfg, NetworkTopology topo)
    : cfg_(cfg),
      topo_(std::move(topo)),
      channel_(channel_from_config(cfg)),
      ledger_(topo_.nodes.size(), topo_.sink_id, cfg.init_energy_mAh,
              per_packet_energy(cfg.tx_draw_mA, cfg.packet_size_bytes, cfg.data_rate_bps),
              per_packet_energy(cfg.rx_draw_mA, cfg.packet_size_bytes, cfg.data_rate_bps)),
      mobility_rng_(RngStream(cfg.seed, "mobility")),
      channel_rng_(RngStream(cfg.seed, "channel")),
      loss_rng_(RngStream(cfg.seed, "loss")),
      round_hops_(topo_.hops_to_sink) {}

void Engine::init_targets() {
    FieldBounds bounds{cfg_.grid_width_m, cfg_.grid_height_m};
    SpeedRange speeds{cfg_.target_speed_min_mps, cfg_.target_speed_max_mps};
    targets_.clear();
    for (const Node& n : topo_.nodes) {
        if (n.role != NodeRole::Target) continue;
        targets_.push_back(init_target_state(n.id, n.pos, bounds, speeds, *mobility_rng_));
    }
    for (const TargetState& t : targets_) {
        trajectory_digest_.feed(t.true_position.x);
        trajectory_digest_.feed(t.true_position.y);
    }
}

void Engine::schedule(double time_s, EventKind kind, std::int64_t payload) {
    queue_.push(Event{time_s, kind, next_seq_++, payload});
}

MetricsReport Engine::run(Strategy strategy) {
    bool any_reference_connected = false;
    for (NodeId id = 1; id <= topo_.num_references; ++id)
        if (topo_.hops_to_sink[id] != kUnreachable) any_reference_connected = true;
    if (topo_.num_references > 0 && !any_reference_connected)
        throw TopologyError("sink is unreachable from every reference node");

    strategy_ = strategy;
    report_ = MetricsReport{};
    report_.strategy = strategy;
    report_.rounds_executed = cfg_.rounds();
    report_.rounds.resize(report_.rounds_executed);
    report_.sink_bound_sent.assign(report_.rounds_executed, 0);
    for (int k = 1; k <= report_.rounds_executed; ++k) report_.rounds[k - 1].round = k;

    init_targets();

    // Mobility ticks are scheduled ahead of rounds so that on a shared
    // timestamp the tick's insertion sequence is lower and positions are
    // current when the round fires.
    const double eps = 1e-9;
    for (int tick = 1; tick * cfg_.mobility_step_s <= cfg_.duration_s + eps; ++tick)
        schedule(tick * cfg_.mobility_step_s, EventKind::MobilityTick, tick);
    for (int k = 1; k <= report_.rounds_executed; ++k)
        schedule(k * cfg_.reporting_period_s, EventKind::ReportingRound, k);

    while (!queue_.empty()) {
        Event ev = queue_.top();
        queue_.pop();
        clock_s_ = ev.time_s;
        switch (ev.kind) {
            case EventKind::MobilityTick:
                mobility_tick();
                break;
            case EventKind::ReportingRound:
                reporting_round(static_cast<int>(ev.payload));
                break;
            case EventKind::PacketHop: {
                InFlight& f = inflight_[static_cast<std::size_t>(ev.payload)];
                if (advance_hop(f)) schedule(clock_s_, EventKind::PacketHop, ev.payload);
                break;
            }
        }
    }
    close_open_round();
    finalize_report();
    return report_;
}

void Engine::mobility_tick() {
    FieldBounds bounds{cfg_.grid_width_m, cfg_.grid_height_m};
    SpeedRange speeds{cfg_.target_speed_min_mps, cfg_.target_speed_max_mps};
    for (TargetState& t : targets_)
        random_waypoint_step(t, cfg_.mobility_step_s, bounds, speeds, *mobility_rng_);
    for (const TargetState& t : targets_) {
        trajectory_digest_.feed(t.true_position.x);
        trajectory_digest_.feed(t.true_position.y);
    }
}

void Engine::reporting_round(int round) {
    close_open_round();
    open_round_ = round;
    inflight_.clear();
    refresh_round_state();
    switch (strategy_) {
        case Strategy::Centralized: centralized_round(round, *this); break;
        case Strategy::Decentralized: decentralized_round(round, *this); break;
        case Strategy::Improved: improved_round(round, *this); break;
    }
}

void Engine::close_open_round() {
    if (open_round_ >= 1)
        report_.rounds[open_round_ - 1].energy_consumed_total = ledger_.total_consumed_mAh();
    open_round_ = 0;
}

void Engine::refresh_round_state() {
    const NodeId first_target = topo_.first_target_id();
    const int n_targets = topo_.num_targets;

    round_hops_ = topo_.hops_to_sink;
    target_adjacency_.assign(n_targets, {});

    for (int i = 0; i < n_targets; ++i) {
        TargetState& t = targets_[i];
        t.covering_references.clear();
        auto& nbrs = target_adjacency_[i];
        // fixed nodes (sink + references)
        for (NodeId id = 0; id <= topo_.num_references; ++id) {
            if (distance(t.true_position, topo_.nodes[id].pos) > cfg_.radio_range_m) continue;
            nbrs.push_back(id);
            if (topo_.nodes[id].role != NodeRole::Reference) continue;
            if (topo_.hops_to_sink[id] == kUnreachable) {
                ++report_.unreachable_skips;  // in range but routeless, sits out
            } else {
                t.covering_references.push_back(id);
            }
        }
        // other targets
        for (int j = 0; j < n_targets; ++j) {
            if (j == i) continue;
            if (distance(t.true_position, targets_[j].true_position) <= cfg_.radio_range_m)
                nbrs.push_back(first_target + j);
        }
    }

    // Target hop counts: 1 + min over neighbours, iterated to a fixpoint so
    // chains of targets relaying for each other settle. Fixed-node counts
    // stay pinned to the build-time BFS.
    for (int i = 0; i < n_targets; ++i) round_hops_[first_target + i] = kUnreachable;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n_targets; ++i) {
            int best = kUnreachable;
            for (NodeId v : target_adjacency_[i])
                best = std::min(best, round_hops_[v]);
            if (best == kUnreachable) continue;
            if (best + 1 < round_hops_[first_target + i]) {
                round_hops_[first_target + i] = best + 1;
                changed = true;
            }
        }
    }
}

NodeId Engine::next_hop_towards_sink(NodeId from) const {
    const int h = round_hops_[from];
    const auto& nbrs = topo_.is_target(from)
                           ? target_adjacency_[from - topo_.first_target_id()]
                           : topo_.adjacency[from];
    for (NodeId v : nbrs) {  // ascending ids, first match is the tie-break winner
        if (round_hops_[v] != kUnreachable && round_hops_[v] == h - 1) return v;
    }
    return -1;
}

std::vector<NodeId> Engine::route_to_sink(NodeId src) const {
    if (round_hops_[src] == kUnreachable) return {};
    std::vector<NodeId> path{src};
    NodeId cur = src;
    while (cur != topo_.sink_id) {
        NodeId nxt = next_hop_towards_sink(cur);
        if (nxt < 0) return {};  // should not happen with a consistent hop map
        path.push_back(nxt);
        cur = nxt;
    }
    return path;
}

bool Engine::send(MessageKind kind, NodeId src, NodeId dst, std::vector<NodeId> path,
                  int round, int payload_locations) {
    MessageRecord msg{kind, src, dst, std::move(path), round, payload_locations};
    RoundMetrics* row = (round >= 1 && round <= static_cast<int>(report_.rounds.size()))
                            ? &report_.rounds[round - 1]
                            : nullptr;
    switch (kind) {
        case MessageKind::LocalExchange:
            ++report_.total_local;
            if (row) ++row->local_msgs;
            break;
        case MessageKind::Reading:
            ++report_.total_readings;
            if (row) ++report_.sink_bound_sent[round - 1];
            break;
        case MessageKind::LocationReport:
            ++report_.total_reports;
            if (row) ++report_.sink_bound_sent[round - 1];
            break;
        case MessageKind::GroupReport:
            ++report_.total_group;
            if (row) ++row->group_msgs;
            break;
        case MessageKind::GlobalAggregate:
            ++report_.total_global;
            if (row) ++row->global_msgs;
            if (row) ++report_.sink_bound_sent[round - 1];
            break;
    }
    if (topo_.is_target(src) && topo_.is_target(dst)) ++report_.target_to_target_msgs;

    inflight_.push_back(InFlight{std::move(msg), 1, false});
    const std::size_t slot = inflight_.size() - 1;
    if (inflight_[slot].msg.hop_path.size() <= 1) {
        finish_delivery(inflight_[slot].msg);
        inflight_[slot].delivered = true;
        return true;
    }
    schedule(clock_s_, EventKind::PacketHop, static_cast<std::int64_t>(slot));
    // Drain this packet's hops now. They all carry the current timestamp, so
    // the order of work is the same as letting the main loop pick them up,
    // and the caller learns synchronously whether the packet made it.
    while (!queue_.empty() && queue_.top().kind == EventKind::PacketHop) {
        Event ev = queue_.top();
        queue_.pop();
        InFlight& f = inflight_[static_cast<std::size_t>(ev.payload)];
        if (advance_hop(f)) schedule(clock_s_, EventKind::PacketHop, ev.payload);
    }
    return inflight_[slot].delivered;
}

bool Engine::send_one_hop(MessageKind kind, NodeId src, NodeId dst, int round,
                          int payload_locations) {
    std::vector<NodeId> path =
        src == dst ? std::vector<NodeId>{src} : std::vector<NodeId>{src, dst};
    return send(kind, src, dst, std::move(path), round, payload_locations);
}

bool Engine::send_to_sink(MessageKind kind, NodeId src, int round, int payload_locations) {
    std::vector<NodeId> path = route_to_sink(src);
    if (path.empty()) {
        // no route: the packet is logged and dropped without charges
        MessageRecord msg{kind, src, topo_.sink_id, {}, round, payload_locations};
        drop_message(msg);
        return false;
    }
    return send(kind, src, topo_.sink_id, std::move(path), round, payload_locations);
}

bool Engine::advance_hop(InFlight& f) {
    const auto& path = f.msg.hop_path;
    NodeId u = path[f.next_index - 1];
    NodeId v = path[f.next_index];

    if (ledger_.depleted(u)) {
        drop_message(f.msg);
        return false;
    }
    ledger_.charge(u, ChargeDirection::Tx);
    if (cfg_.loss_rate > 0.0 && loss_rng_->bernoulli(cfg_.loss_rate)) {
        drop_message(f.msg);
        return false;
    }
    if (ledger_.depleted(v)) {
        ledger_.charge(v, ChargeDirection::Rx);  // no-op, raises the flag
        drop_message(f.msg);
        return false;
    }
    ledger_.charge(v, ChargeDirection::Rx);

    ++f.next_index;
    if (f.next_index == path.size()) {
        finish_delivery(f.msg);
        f.delivered = true;
        return false;
    }
    return true;
}

void Engine::finish_delivery(const MessageRecord& msg) {
    if (msg.dst != topo_.sink_id) return;
    RoundMetrics* row =
        (msg.round >= 1 && msg.round <= static_cast<int>(report_.rounds.size()))
            ? &report_.rounds[msg.round - 1]
            : nullptr;
    if (row) ++row->sink_msgs;
    ++report_.total_sink_delivered;
    sink_hops_total_ += msg.hop_path.empty() ? 0 : msg.hop_path.size() - 1;
    switch (msg.kind) {
        case MessageKind::Reading: ++report_.sink_readings; break;
        case MessageKind::LocationReport: ++report_.sink_reports; break;
        case MessageKind::GlobalAggregate: ++report_.sink_aggregates; break;
        default: break;
    }
}

void Engine::drop_message(const MessageRecord& msg) {
    RoundMetrics* row =
        (msg.round >= 1 && msg.round <= static_cast<int>(report_.rounds.size()))
            ? &report_.rounds[msg.round - 1]
            : nullptr;
    if (row) ++row->drops;
    ++report_.total_drops;
}

bool Engine::deliver(const MessageRecord& msg) {
    // Synchronous primitive: walks the whole path with the same per-hop
    // charging and drop rules as the event path.
    if (msg.hop_path.size() <= 1) {
        finish_delivery(msg);
        return true;
    }
    InFlight f{msg, 1, false};
    while (advance_hop(f)) {
    }
    return f.delivered;
}

void Engine::record_localization(int round, NodeId target, std::optional<double> error_m) {
    report_.localization.push_back(LocalizationRow{round, target, error_m});
}

void Engine::record_groups(const GroupAssignment& ga) {
    for (const Group& g : ga.groups)
        report_.groups.push_back(GroupLogEntry{ga.round, g.leader, g.members});
    report_.fallback_elections += ga.fallback_elections;
}

void Engine::finalize_report() {
    report_.node_energy.reserve(topo_.nodes.size());
    for (const Node& n : topo_.nodes) {
        NodeEnergyRow row;
        row.node_id = n.id;
        row.role = n.role;
        row.tx_count = ledger_.tx_count(n.id);
        row.rx_count = ledger_.rx_count(n.id);
        row.consumed_mAh = ledger_.consumed_mAh(n.id);
        row.remaining_mAh = ledger_.remaining_mAh(n.id);
        double per_round = report_.rounds_executed > 0
                               ? row.consumed_mAh / report_.rounds_executed
                               : 0.0;
        row.est_lifetime_s =
            battery_life(per_round, cfg_.init_energy_mAh, cfg_.reporting_period_s);
        report_.node_energy.push_back(row);
    }
    report_.mean_hops = report_.total_sink_delivered == 0
                            ? 0.0
                            : static_cast<double>(sink_hops_total_) /
                                  static_cast<double>(report_.total_sink_delivered);
    report_.trajectory_digest = trajectory_digest_.value();
}

MetricsReport run_simulation(const SimConfig& cfg, Strategy strategy) {
    Engine engine(cfg);
    return engine.run(strategy);
}

}  // namespace wsntrack
