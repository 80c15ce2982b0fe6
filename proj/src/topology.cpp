#include "wsntrack/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "wsntrack/channel.hpp"
#include "wsntrack/rng.hpp"

namespace wsntrack {

std::string to_string(NodeRole r) {
    switch (r) {
        case NodeRole::Sink: return "sink";
        case NodeRole::Reference: return "reference";
        case NodeRole::Target: return "target";
    }
    return "?";
}

GridShape choose_grid_shape(int count, double aspect) {
    GridShape best{count, 1};
    double best_err = std::numeric_limits<double>::infinity();
    for (int rows = 1; rows <= count; ++rows) {
        if (count % rows != 0) continue;
        int cols = count / rows;
        double err = std::abs(std::log(static_cast<double>(cols) / rows) - std::log(aspect));
        // strict < keeps the first (widest) layout on ties
        if (err < best_err) {
            best_err = err;
            best = {cols, rows};
        }
    }
    return best;
}

namespace {

Vec2 corner_position(SinkCorner c, double w, double h) {
    switch (c) {
        case SinkCorner::SouthWest: return {0.0, 0.0};
        case SinkCorner::SouthEast: return {w, 0.0};
        case SinkCorner::NorthWest: return {0.0, h};
        case SinkCorner::NorthEast: return {w, h};
    }
    return {0.0, 0.0};
}

// Disk-model adjacency over the fixed nodes (sink + references).
void build_static_adjacency(NetworkTopology& topo, double range_m) {
    int n_fixed = 1 + topo.num_references;
    topo.adjacency.assign(topo.nodes.size(), {});
    for (NodeId a = 0; a < n_fixed; ++a) {
        for (NodeId b = a + 1; b < n_fixed; ++b) {
            if (distance(topo.nodes[a].pos, topo.nodes[b].pos) <= range_m) {
                topo.adjacency[a].push_back(b);
                topo.adjacency[b].push_back(a);
            }
        }
    }
    for (auto& nbrs : topo.adjacency) std::sort(nbrs.begin(), nbrs.end());
}

}  // namespace

NetworkTopology build_grid_topology(const SimConfig& cfg) {
    if (!(cfg.grid_width_m > 0.0) || !(cfg.grid_height_m > 0.0))
        throw TopologyError("grid too small: field dimensions must be positive");
    if (cfg.num_references < 1)
        throw TopologyError("at least one reference node is required");

    NetworkTopology topo;
    topo.num_references = cfg.num_references;
    topo.num_targets = cfg.num_targets;
    topo.sink_id = 0;

    topo.nodes.push_back(
        {0, NodeRole::Sink, corner_position(cfg.sink_corner, cfg.grid_width_m, cfg.grid_height_m)});

    GridShape shape =
        choose_grid_shape(cfg.num_references, cfg.grid_width_m / cfg.grid_height_m);
    double dx = shape.cols > 1 ? cfg.grid_width_m / (shape.cols - 1) : 0.0;
    double dy = shape.rows > 1 ? cfg.grid_height_m / (shape.rows - 1) : 0.0;
    if (!std::isfinite(dx) || !std::isfinite(dy) || dx < 0.0 || dy < 0.0)
        throw TopologyError("grid too small for requested reference count");

    NodeId next = 1;
    for (int j = 0; j < shape.rows; ++j) {
        for (int i = 0; i < shape.cols; ++i) {
            double x = shape.cols > 1 ? i * dx : cfg.grid_width_m / 2.0;
            double y = shape.rows > 1 ? j * dy : cfg.grid_height_m / 2.0;
            topo.nodes.push_back({next++, NodeRole::Reference, {x, y}});
        }
    }

    RngStream rng(cfg.seed, "topology");
    for (int t = 0; t < cfg.num_targets; ++t) {
        Vec2 p{rng.uniform(0.0, cfg.grid_width_m), rng.uniform(0.0, cfg.grid_height_m)};
        topo.nodes.push_back({next++, NodeRole::Target, p});
    }

    build_static_adjacency(topo, cfg.radio_range_m);
    topo.hops_to_sink = hop_counts_to_sink(topo);
    return topo;
}

NetworkTopology build_explicit_topology(const SimConfig& cfg, Vec2 sink_pos,
                                        const std::vector<Vec2>& reference_positions,
                                        const std::vector<Vec2>& target_positions) {
    NetworkTopology topo;
    topo.num_references = static_cast<int>(reference_positions.size());
    topo.num_targets = static_cast<int>(target_positions.size());
    topo.sink_id = 0;
    topo.nodes.push_back({0, NodeRole::Sink, sink_pos});
    NodeId next = 1;
    for (const auto& p : reference_positions)
        topo.nodes.push_back({next++, NodeRole::Reference, p});
    for (const auto& p : target_positions)
        topo.nodes.push_back({next++, NodeRole::Target, p});
    build_static_adjacency(topo, cfg.radio_range_m);
    topo.hops_to_sink = hop_counts_to_sink(topo);
    return topo;
}

std::vector<int> hop_counts_to_sink(const NetworkTopology& topo) {
    std::vector<int> hops(topo.nodes.size(), kUnreachable);
    hops[topo.sink_id] = 0;
    std::deque<NodeId> frontier{topo.sink_id};
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop_front();
        for (NodeId v : topo.adjacency[u]) {
            if (hops[v] == kUnreachable) {
                hops[v] = hops[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return hops;
}

std::vector<NodeId> route(NodeId src, NodeId dst,
                          const std::vector<std::vector<NodeId>>& adjacency) {
    if (src == dst) return {src};
    // BFS from dst, then greedy descent from src picking the lowest-id
    // neighbour one hop closer. That yields the lexicographically smallest
    // shortest path.
    std::vector<int> dist(adjacency.size(), kUnreachable);
    dist[dst] = 0;
    std::deque<NodeId> frontier{dst};
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop_front();
        for (NodeId v : adjacency[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    if (dist[src] == kUnreachable) return {};

    std::vector<NodeId> path{src};
    NodeId cur = src;
    while (cur != dst) {
        NodeId next = -1;
        for (NodeId v : adjacency[cur]) {  // adjacency sorted, first hit wins
            if (dist[v] == dist[cur] - 1) {
                next = v;
                break;
            }
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

}  // namespace wsntrack
