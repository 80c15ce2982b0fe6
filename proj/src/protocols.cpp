#include "wsntrack/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsntrack/engine.hpp"
#include "wsntrack/localization.hpp"

namespace wsntrack {

ElectionResult elect_leader(const std::vector<NodeId>& candidates,
                            const std::vector<int>& hops, const EnergyLedger& ledger,
                            double threshold_fraction) {
    if (candidates.empty())
        throw std::invalid_argument("elect_leader: empty candidate set");

    // min by (hops, -remaining energy, id); total order, so the winner does
    // not depend on candidate ordering
    auto better = [&](NodeId a, NodeId b) {
        if (hops[a] != hops[b]) return hops[a] < hops[b];
        double ea = ledger.remaining_mAh(a);
        double eb = ledger.remaining_mAh(b);
        if (ea != eb) return ea > eb;
        return a < b;
    };

    const double threshold = threshold_fraction * ledger.init_mAh();
    NodeId best = -1;
    for (NodeId c : candidates) {
        if (ledger.remaining_mAh(c) < threshold) continue;
        if (best < 0 || better(c, best)) best = c;
    }
    if (best >= 0) return {best, false};

    for (NodeId c : candidates)
        if (best < 0 || better(c, best)) best = c;
    return {best, true};
}

GroupAssignment form_groups(const std::vector<NodeId>& targets,
                            const std::vector<Vec2>& positions_by_id,
                            const std::vector<int>& hops, const EnergyLedger& ledger,
                            double radio_range_m, double threshold_fraction, int round) {
    GroupAssignment ga;
    ga.round = round;

    std::vector<NodeId> remaining = targets;
    std::sort(remaining.begin(), remaining.end());
    while (!remaining.empty()) {
        ElectionResult er = elect_leader(remaining, hops, ledger, threshold_fraction);
        if (er.fallback) ++ga.fallback_elections;

        Group g;
        g.leader = er.leader;
        std::vector<NodeId> rest;
        for (NodeId t : remaining) {
            if (t == er.leader ||
                distance(positions_by_id[t], positions_by_id[er.leader]) <= radio_range_m)
                g.members.push_back(t);  // remaining is sorted, members stay ascending
            else
                rest.push_back(t);
        }
        ga.groups.push_back(std::move(g));
        remaining = std::move(rest);
    }
    return ga;
}

std::vector<std::vector<TargetLocation>> aggregate(
    const std::vector<TargetLocation>& locations, int capacity) {
    if (capacity < 1) throw std::invalid_argument("aggregate: capacity must be >= 1");
    std::vector<std::vector<TargetLocation>> payloads;
    for (std::size_t i = 0; i < locations.size(); i += capacity) {
        std::size_t end = std::min(locations.size(), i + capacity);
        payloads.emplace_back(locations.begin() + i, locations.begin() + end);
    }
    return payloads;
}

namespace {

// Beacon exchange for one target: every covering reference sends a 1-hop
// local message; references whose beacon arrived become anchors for the
// trilateration. Records the per-round localization row either way.
// Returns true when the target now holds a fresh position estimate.
bool localize_with_exchanges(int round, Engine& eng, TargetState& t) {
    std::vector<Vec2> anchors;
    anchors.reserve(t.covering_references.size());
    for (NodeId ref : t.covering_references)
        if (eng.send_one_hop(MessageKind::LocalExchange, ref, t.id, round))
            anchors.push_back(eng.topology().nodes[ref].pos);

    TrilaterationResult res = localize_target(t, anchors, eng.channel(), eng.channel_rng());
    if (res.ok()) {
        eng.record_localization(round, t.id, distance(*res.position, t.true_position));
        return true;
    }
    eng.note_localization_failure();
    eng.record_localization(round, t.id, std::nullopt);
    return false;
}

}  // namespace

void centralized_round(int round, Engine& eng) {
    const ChannelParams& ch = eng.channel();
    for (TargetState& t : eng.targets()) {
        // Each covering reference measures the target and forwards the
        // reading over its multi-hop route; the sink trilaterates from the
        // readings that actually arrive.
        std::vector<Vec2> anchors;
        std::vector<double> dists;
        for (NodeId ref : t.covering_references) {
            Vec2 ref_pos = eng.topology().nodes[ref].pos;
            double d = std::max(distance(t.true_position, ref_pos), 1e-3);
            std::optional<double> draw;
            if (ch.noise_sigma_db > 0.0) draw = eng.channel_rng().standard_normal();
            double rss = rss_at_distance(d, ch, draw);
            if (eng.send_to_sink(MessageKind::Reading, ref, round)) {
                anchors.push_back(ref_pos);
                dists.push_back(distance_from_rss(rss, ch));
            }
        }
        TrilaterationResult res = trilaterate(anchors, dists);
        if (res.ok()) {
            t.estimated_position = res.position;
            eng.record_localization(round, t.id, distance(*res.position, t.true_position));
        } else {
            eng.note_localization_failure();
            eng.record_localization(round, t.id, std::nullopt);
        }
    }
}

void decentralized_round(int round, Engine& eng) {
    for (TargetState& t : eng.targets()) {
        // Localization success implies >= 3 connected covering references,
        // so a route to the sink always exists for the report.
        if (localize_with_exchanges(round, eng, t))
            eng.send_to_sink(MessageKind::LocationReport, t.id, round);
    }
}

void improved_round(int round, Engine& eng) {
    std::vector<NodeId> localized;
    std::vector<Vec2> positions_by_id(eng.topology().nodes.size());
    for (TargetState& t : eng.targets()) {
        if (localize_with_exchanges(round, eng, t)) localized.push_back(t.id);
        positions_by_id[t.id] = t.true_position;
    }
    if (localized.empty()) return;

    GroupAssignment ga =
        form_groups(localized, positions_by_id, eng.round_hops(), eng.ledger(),
                    eng.config().radio_range_m, eng.config().leader_energy_threshold_fraction,
                    round);
    eng.record_groups(ga);

    const NodeId first_target = eng.topology().first_target_id();
    for (const Group& g : ga.groups) {
        // Non-leader members hand their location to the leader; the leader
        // batches everything it holds (its own location included) into
        // ceil(n/capacity) packets for the sink.
        std::vector<TargetLocation> locations;
        for (NodeId member : g.members) {
            const TargetState& ts = eng.targets()[member - first_target];
            if (member == g.leader) {
                locations.push_back({member, *ts.estimated_position});
            } else if (eng.send_one_hop(MessageKind::GroupReport, member, g.leader, round)) {
                locations.push_back({member, *ts.estimated_position});
            }
        }
        for (const auto& payload : aggregate(locations, eng.config().aggregation_capacity))
            eng.send_to_sink(MessageKind::GlobalAggregate, g.leader, round,
                             static_cast<int>(payload.size()));
    }
}

}  // namespace wsntrack
