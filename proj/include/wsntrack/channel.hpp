#pragma once

#include <optional>
#include <stdexcept>

#include "wsntrack/geometry.hpp"

namespace wsntrack {

// Log-distance path loss:  rss(d) = rss_ref - 10*eta*log10(d/d0) + sigma*N(0,1).
// Connectivity deliberately ignores the channel and uses the plain disk model,
// so RSS noise moves position estimates but never the adjacency graph.
struct ChannelParams {
    double rss_ref_dbm = -40.0;   // measured at ref_distance_m
    double ref_distance_m = 1.0;
    double path_loss_exponent = 2.4;
    double noise_sigma_db = 0.0;
    double radio_range_m = 16.0;
};

// RSS in dBm at distance d. noise_draw is a standard-normal sample scaled by
// noise_sigma_db; pass nullopt for the noiseless value. d <= 0 throws.
double rss_at_distance(double d_m, const ChannelParams& params,
                       std::optional<double> noise_draw = std::nullopt);

// Exact inverse of the noiseless model: any finite RSS maps to a positive
// distance.
double distance_from_rss(double rss_dbm, const ChannelParams& params);

// Disk model, boundary inclusive.
bool in_range(Vec2 a, Vec2 b, const ChannelParams& params);

}  // namespace wsntrack
