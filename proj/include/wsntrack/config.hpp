#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace wsntrack {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SinkCorner { SouthWest, SouthEast, NorthWest, NorthEast };

std::string to_string(SinkCorner c);
SinkCorner sink_corner_from_string(const std::string& s);

// Every tunable of a simulation run. Field names double as the keys of the
// flat key-value config file, e.g.
//
//     num_targets = 10
//     radio_range_m = 16
//
struct SimConfig {
    // Field geometry and population
    double grid_width_m = 75.0;
    double grid_height_m = 65.0;
    int num_references = 56;
    int num_targets = 10;

    // Schedule: one reporting round every reporting_period_s, for duration_s.
    double reporting_period_s = 2.0;
    double duration_s = 360.0;

    // Radio and frame parameters (802.15.4, 2.4 GHz band)
    double radio_range_m = 16.0;
    int packet_size_bytes = 127;
    double data_rate_bps = 250000.0;

    // Energy model: current draws while transmitting/receiving one frame.
    double tx_draw_mA = 44.0;
    double rx_draw_mA = 49.0;
    double init_energy_mAh = 27.0;

    // Grouping
    double leader_energy_threshold_fraction = 0.2;
    int aggregation_capacity = 5;

    // Log-distance path-loss channel
    double rss_ref_dbm = -40.0;
    double path_loss_exponent = 2.4;
    double ref_distance_m = 1.0;
    double noise_sigma_db = 0.0;

    // Random-waypoint mobility; min == max == 0 keeps targets static.
    double target_speed_min_mps = 0.5;
    double target_speed_max_mps = 1.5;
    double mobility_step_s = 1.0;

    // Per-hop stochastic loss probability. 0 keeps message counts exact.
    double loss_rate = 0.0;

    SinkCorner sink_corner = SinkCorner::SouthWest;
    std::uint64_t seed = 1;

    int rounds() const {
        return static_cast<int>(duration_s / reporting_period_s);
    }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Raw settings as parsed from a file or assembled from CLI flags, before
// validation. Unset keys fall back to the defaults above.
using RawSettings = std::map<std::string, std::string>;

// Parses "key = value" lines ('#' starts a comment). Unknown keys are an
// error, as are unreadable files.
RawSettings load_settings_file(const std::string& path);

// Applies raw settings over the defaults and checks every invariant:
// positive physical quantities, threshold in [0,1], aggregation capacity
// >= 1, duration >= reporting period, speed_min <= speed_max, loss rate in
// [0,1). Throws ConfigError with the offending key on violation.
SimConfig validate_config(const RawSettings& raw);

// Settings snapshot with every field spelled out, reproducible as a config
// file or embedded in a run manifest.
RawSettings to_settings(const SimConfig& cfg);

}  // namespace wsntrack
