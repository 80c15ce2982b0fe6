#pragma once

#include <vector>

#include "wsntrack/energy.hpp"
#include "wsntrack/geometry.hpp"
#include "wsntrack/topology.hpp"

namespace wsntrack {

class Engine;

struct Group {
    NodeId leader = 0;
    std::vector<NodeId> members;  // ascending ids, leader included

    friend bool operator==(const Group&, const Group&) = default;
};

// Partition of the round's localizable targets. Every member is within radio
// range of its group leader.
struct GroupAssignment {
    std::vector<Group> groups;  // in formation order
    int round = 0;
    int fallback_elections = 0;  // leaders chosen with nobody above threshold
};

struct ElectionResult {
    NodeId leader = 0;
    bool fallback = false;  // no candidate met the energy threshold
};

// Picks min by (hops, -remaining energy, id) among candidates at or above
// threshold_fraction * InitEng; falls back to the same ordering over all
// candidates when none qualifies. Throws on an empty candidate set. The
// result does not depend on candidate order.
ElectionResult elect_leader(const std::vector<NodeId>& candidates,
                            const std::vector<int>& hops, const EnergyLedger& ledger,
                            double threshold_fraction);

// Greedy grouping: repeatedly elect a leader over the still-ungrouped
// targets and hand it every ungrouped target within radio range; a target
// out of range of every elected leader ends up leading its own singleton.
// positions_by_id is indexed by node id (only target entries are read).
GroupAssignment form_groups(const std::vector<NodeId>& targets,
                            const std::vector<Vec2>& positions_by_id,
                            const std::vector<int>& hops, const EnergyLedger& ledger,
                            double radio_range_m, double threshold_fraction, int round);

struct TargetLocation {
    NodeId id = 0;
    Vec2 position;
};

// Splits locations (caller supplies them in member-id order) into
// ceil(n/capacity) payloads of at most capacity entries, order preserved.
std::vector<std::vector<TargetLocation>> aggregate(const std::vector<TargetLocation>& locations,
                                                   int capacity);

// ---- per-round procedures ----
// Centralized: every covering reference forwards one reading per target to
// the sink, which trilaterates.
void centralized_round(int round, Engine& engine);
// Decentralized: each target self-localizes off reference beacons, then
// reports its own position to the sink.
void decentralized_round(int round, Engine& engine);
// Improved: self-localization, then grouping; members hand their location to
// the leader, which forwards packed batches to the sink.
void improved_round(int round, Engine& engine);

}  // namespace wsntrack
