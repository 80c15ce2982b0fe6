#include "wsntrack/channel.hpp"

#include <cmath>

namespace wsntrack {

double rss_at_distance(double d_m, const ChannelParams& params,
                       std::optional<double> noise_draw) {
    if (!(d_m > 0.0))
        throw std::domain_error("rss_at_distance: distance must be > 0");
    double rss = params.rss_ref_dbm -
                 10.0 * params.path_loss_exponent * std::log10(d_m / params.ref_distance_m);
    if (noise_draw) rss += params.noise_sigma_db * *noise_draw;
    return rss;
}

double distance_from_rss(double rss_dbm, const ChannelParams& params) {
    return params.ref_distance_m *
           std::pow(10.0, (params.rss_ref_dbm - rss_dbm) / (10.0 * params.path_loss_exponent));
}

bool in_range(Vec2 a, Vec2 b, const ChannelParams& params) {
    return distance(a, b) <= params.radio_range_m;
}

}  // namespace wsntrack
