#pragma once

#include <optional>
#include <vector>

#include "wsntrack/channel.hpp"
#include "wsntrack/geometry.hpp"
#include "wsntrack/mobility.hpp"

namespace wsntrack {

enum class LocalizationFailure {
    InsufficientCoverage,  // fewer than 3 covering references
    DegenerateGeometry,    // covering references (nearly) collinear
};

struct TrilaterationResult {
    std::optional<Vec2> position;
    std::optional<LocalizationFailure> failure;

    bool ok() const { return position.has_value(); }
};

// Smallest singular value below this means the linearized system is rank
// deficient (collinear anchors).
inline constexpr double kDegeneracySingularValue = 1e-9;

// Least-squares multilateration over all anchors. The linearized
// difference-of-circles system provides the degeneracy gate and one starting
// point; a coarse scan over the bounding box of the measured circles provides
// a second. Both are polished with a short Gauss-Newton descent on the range
// residuals and the lower-cost result wins, which keeps the estimate aligned
// with the nonlinear least-squares optimum even when noise bends the residual
// surface into several basins. Exact distances from >= 3 non-collinear
// anchors recover the true point to well under 1e-6 m.
TrilaterationResult trilaterate(const std::vector<Vec2>& anchor_positions,
                                const std::vector<double>& distances_m);

// One localization attempt: sample RSS from every covering reference (noise
// drawn from `channel_rng` when sigma > 0), invert to distances, trilaterate.
// On success the estimate is stored in `target.estimated_position`.
// `target.covering_references` is expected to be filled by the caller.
TrilaterationResult localize_target(TargetState& target,
                                    const std::vector<Vec2>& reference_positions,
                                    const ChannelParams& channel, RngStream& channel_rng);

}  // namespace wsntrack
