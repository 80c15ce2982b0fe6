#include "wsntrack/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsntrack {

namespace {

Vec2 clamp_to_bounds(Vec2 p, const FieldBounds& b) {
    return {std::clamp(p.x, 0.0, b.width_m), std::clamp(p.y, 0.0, b.height_m)};
}

void draw_leg(TargetState& s, const FieldBounds& bounds, const SpeedRange& speeds,
              RngStream& rng) {
    s.waypoint = {rng.uniform(0.0, bounds.width_m), rng.uniform(0.0, bounds.height_m)};
    s.speed_mps = rng.uniform(speeds.min_mps, speeds.max_mps);
}

}  // namespace

TargetState init_target_state(NodeId id, Vec2 position, const FieldBounds& bounds,
                              const SpeedRange& speeds, RngStream& rng) {
    TargetState s;
    s.id = id;
    s.true_position = clamp_to_bounds(position, bounds);
    draw_leg(s, bounds, speeds, rng);
    return s;
}

void random_waypoint_step(TargetState& state, double dt_s, const FieldBounds& bounds,
                          const SpeedRange& speeds, RngStream& rng) {
    if (!(dt_s > 0.0)) throw std::domain_error("random_waypoint_step: dt must be > 0");
    double step = state.speed_mps * dt_s;
    if (step <= 0.0) return;  // stationary leg

    Vec2 delta = state.waypoint - state.true_position;
    double dist = norm(delta);
    if (step >= dist) {
        // Arrived; the leftover fraction of the tick is not carried into the
        // next leg.
        state.true_position = state.waypoint;
        draw_leg(state, bounds, speeds, rng);
    } else {
        state.true_position = clamp_to_bounds(state.true_position + (step / dist) * delta, bounds);
    }
}

}  // namespace wsntrack
