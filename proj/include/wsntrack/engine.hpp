#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "wsntrack/channel.hpp"
#include "wsntrack/config.hpp"
#include "wsntrack/energy.hpp"
#include "wsntrack/localization.hpp"
#include "wsntrack/metrics.hpp"
#include "wsntrack/mobility.hpp"
#include "wsntrack/topology.hpp"

namespace wsntrack {

struct GroupAssignment;  // protocols.hpp

enum class EventKind { MobilityTick, ReportingRound, PacketHop };

struct Event {
    double time_s = 0.0;
    EventKind kind = EventKind::MobilityTick;
    std::uint64_t seq = 0;      // insertion order, breaks timestamp ties
    std::int64_t payload = 0;   // round index / tick index / in-flight slot
};

// One logical packet. hop_path runs from src to dst inclusive; consecutive
// entries are adjacent in the round's connectivity.
struct MessageRecord {
    MessageKind kind = MessageKind::LocalExchange;
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<NodeId> hop_path;
    int round = 0;
    int payload_locations = 1;
};

// Single-threaded discrete-event simulation of one (config, strategy) run.
// Reporting rounds fire every reporting_period_s; mobility ticks every
// mobility_step_s (scheduled first on equal timestamps, so a round always
// sees current positions). Messages traverse precomputed shortest-hop routes
// with one tx and one rx charge per hop.
//
// Routing: reference-to-sink paths are pinned to the fixed graph computed at
// build time; target hop counts are refreshed every round from current
// positions (targets route through references, other targets, or directly to
// the sink). Next hops descend the hop gradient, lowest id first.
class Engine {
public:
    explicit Engine(const SimConfig& cfg);
    // Engineered layouts: target initial positions come from the topology's
    // target nodes instead of the seeded uniform draw.
    Engine(const SimConfig& cfg, NetworkTopology topo);

    // Executes floor(duration/period) rounds and returns the full report.
    // Throws TopologyError before round 1 if no reference can reach the sink.
    MetricsReport run(Strategy strategy);

    // ---- services used by the per-round protocol procedures ----
    const SimConfig& config() const { return cfg_; }
    const NetworkTopology& topology() const { return topo_; }
    const ChannelParams& channel() const { return channel_; }
    std::vector<TargetState>& targets() { return targets_; }
    EnergyLedger& ledger() { return ledger_; }
    RngStream& channel_rng() { return *channel_rng_; }

    // Hop counts valid for the current round (fixed nodes static, targets
    // refreshed); kUnreachable for disconnected nodes.
    const std::vector<int>& round_hops() const { return round_hops_; }
    bool reachable(NodeId id) const { return round_hops_[id] != kUnreachable; }

    // Both return whether the packet reached dst (hops are drained through
    // the event queue before returning; they all share the round timestamp).
    bool send_one_hop(MessageKind kind, NodeId src, NodeId dst, int round,
                      int payload_locations = 1);
    bool send_to_sink(MessageKind kind, NodeId src, int round, int payload_locations = 1);

    void note_unreachable_skip() { ++report_.unreachable_skips; }
    void note_localization_failure() { ++report_.localization_failures; }
    void record_localization(int round, NodeId target, std::optional<double> error_m);
    void record_groups(const GroupAssignment& ga);

    // ---- primitives exposed for direct testing ----
    // Greedy shortest-hop path to the sink under the current round's hop map;
    // empty if unreachable.
    std::vector<NodeId> route_to_sink(NodeId src) const;
    // Full synchronous delivery with per-hop charging and drop handling;
    // returns whether the packet reached its destination.
    bool deliver(const MessageRecord& msg);
    // Rebuilds target adjacency, hop counts and covering-reference sets from
    // current target positions (run() does this at every round).
    void refresh_round_state();

private:
    struct InFlight {
        MessageRecord msg;
        std::size_t next_index = 1;  // index into hop_path of the receiving node
        bool delivered = false;
    };

    void init_targets();
    void schedule(double time_s, EventKind kind, std::int64_t payload);
    void mobility_tick();
    void reporting_round(int round);
    void close_open_round();
    // One hop of the message; returns true if the message should continue.
    bool advance_hop(InFlight& f);
    void finish_delivery(const MessageRecord& msg);
    void drop_message(const MessageRecord& msg);
    bool send(MessageKind kind, NodeId src, NodeId dst, std::vector<NodeId> path,
              int round, int payload_locations);
    NodeId next_hop_towards_sink(NodeId from) const;
    void finalize_report();

    SimConfig cfg_;
    NetworkTopology topo_;
    Strategy strategy_ = Strategy::Centralized;
    ChannelParams channel_;
    EnergyLedger ledger_;
    MetricsReport report_;
    std::vector<TargetState> targets_;

    std::optional<RngStream> mobility_rng_;
    std::optional<RngStream> channel_rng_;
    std::optional<RngStream> loss_rng_;
    Digest64 trajectory_digest_;

    // round-scoped state
    std::vector<int> round_hops_;
    std::vector<std::vector<NodeId>> target_adjacency_;  // by target slot
    int open_round_ = 0;  // last started round whose row is not closed yet

    // event machinery
    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time_s != b.time_s) return a.time_s > b.time_s;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::uint64_t next_seq_ = 0;
    double clock_s_ = 0.0;
    std::vector<InFlight> inflight_;

    std::uint64_t sink_hops_total_ = 0;  // for mean hop-path length
};

// Facade matching the "one call, one report" usage.
MetricsReport run_simulation(const SimConfig& cfg, Strategy strategy);

}  // namespace wsntrack
