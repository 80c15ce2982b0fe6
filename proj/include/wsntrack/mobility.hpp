#pragma once

#include <optional>
#include <vector>

#include "wsntrack/geometry.hpp"
#include "wsntrack/rng.hpp"
#include "wsntrack/topology.hpp"

namespace wsntrack {

struct FieldBounds {
    double width_m = 0.0;
    double height_m = 0.0;
};

struct SpeedRange {
    double min_mps = 0.0;
    double max_mps = 0.0;
};

struct TargetState {
    NodeId id = 0;
    Vec2 true_position;
    Vec2 waypoint;
    double speed_mps = 0.0;
    std::optional<Vec2> estimated_position;
    std::vector<NodeId> covering_references;
};

// Random-waypoint initial state: waypoint and speed drawn from rng.
TargetState init_target_state(NodeId id, Vec2 position, const FieldBounds& bounds,
                              const SpeedRange& speeds, RngStream& rng);

// Advances one tick: moves speed*dt toward the waypoint; on arrival draws a
// fresh waypoint and speed. A zero-speed target never moves (and never
// redraws). Positions stay inside the field.
void random_waypoint_step(TargetState& state, double dt_s, const FieldBounds& bounds,
                          const SpeedRange& speeds, RngStream& rng);

}  // namespace wsntrack
