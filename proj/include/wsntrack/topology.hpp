#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsntrack/config.hpp"
#include "wsntrack/geometry.hpp"

namespace wsntrack {

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using NodeId = int;

enum class NodeRole { Sink, Reference, Target };

std::string to_string(NodeRole r);

struct Node {
    NodeId id = 0;
    NodeRole role = NodeRole::Reference;
    Vec2 pos;

    friend bool operator==(const Node&, const Node&) = default;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Static connectivity of the fixed part of the network: the sink (id 0) and
// the reference lattice (ids 1..c). Target slots (ids c+1..c+e) carry their
// initial positions; their adjacency changes every round and lives in the
// engine, not here.
struct NetworkTopology {
    std::vector<Node> nodes;  // indexed by id
    std::vector<std::vector<NodeId>> adjacency;  // sink+references only, sorted
    std::vector<int> hops_to_sink;  // kUnreachable if disconnected
    NodeId sink_id = 0;
    int num_references = 0;
    int num_targets = 0;

    bool is_target(NodeId id) const { return nodes[id].role == NodeRole::Target; }
    NodeId first_target_id() const { return 1 + num_references; }

    friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;
};

// Reference lattice factor pair: cols x rows == count, with cols/rows as
// close as possible to aspect (ties prefer the wider layout).
struct GridShape {
    int cols = 1;
    int rows = 1;
};
GridShape choose_grid_shape(int count, double aspect);

// Places the sink at the configured corner, the references on a regular
// lattice spanning the whole field (a single row/column is centred), and the
// targets uniformly at random from the "topology" substream of cfg.seed.
// Degenerate field dimensions throw TopologyError.
NetworkTopology build_grid_topology(const SimConfig& cfg);

// Same node roster but with explicitly chosen positions; used for engineered
// layouts. Reference/target counts are taken from the position lists.
NetworkTopology build_explicit_topology(const SimConfig& cfg, Vec2 sink_pos,
                                        const std::vector<Vec2>& reference_positions,
                                        const std::vector<Vec2>& target_positions);

// BFS hop counts from the sink over the static adjacency.
std::vector<int> hop_counts_to_sink(const NetworkTopology& topo);

// Shortest hop path src -> dst over an arbitrary adjacency, ties broken by
// lowest next-hop id at every step. Returns empty if disconnected.
// src == dst yields the single-node path {src}.
std::vector<NodeId> route(NodeId src, NodeId dst,
                          const std::vector<std::vector<NodeId>>& adjacency);

}  // namespace wsntrack
