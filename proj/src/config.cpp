#include "wsntrack/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace wsntrack {

std::string to_string(SinkCorner c) {
    switch (c) {
        case SinkCorner::SouthWest: return "sw";
        case SinkCorner::SouthEast: return "se";
        case SinkCorner::NorthWest: return "nw";
        case SinkCorner::NorthEast: return "ne";
    }
    return "sw";
}

SinkCorner sink_corner_from_string(const std::string& s) {
    if (s == "sw") return SinkCorner::SouthWest;
    if (s == "se") return SinkCorner::SouthEast;
    if (s == "nw") return SinkCorner::NorthWest;
    if (s == "ne") return SinkCorner::NorthEast;
    throw ConfigError("sink_corner must be one of sw, se, nw, ne (got '" + s + "')");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

// One table drives parsing, validation and round-tripping.
struct Field {
    std::string name;
    std::function<void(SimConfig&, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

const std::vector<Field>& fields() {
    static const std::vector<Field> t = {
        {"grid_width_m",
         [](SimConfig& c, const std::string& v) { c.grid_width_m = parse_double("grid_width_m", v); },
         [](const SimConfig& c) { return fmt_double(c.grid_width_m); }},
        {"grid_height_m",
         [](SimConfig& c, const std::string& v) { c.grid_height_m = parse_double("grid_height_m", v); },
         [](const SimConfig& c) { return fmt_double(c.grid_height_m); }},
        {"num_references",
         [](SimConfig& c, const std::string& v) { c.num_references = static_cast<int>(parse_int("num_references", v)); },
         [](const SimConfig& c) { return std::to_string(c.num_references); }},
        {"num_targets",
         [](SimConfig& c, const std::string& v) { c.num_targets = static_cast<int>(parse_int("num_targets", v)); },
         [](const SimConfig& c) { return std::to_string(c.num_targets); }},
        {"reporting_period_s",
         [](SimConfig& c, const std::string& v) { c.reporting_period_s = parse_double("reporting_period_s", v); },
         [](const SimConfig& c) { return fmt_double(c.reporting_period_s); }},
        {"duration_s",
         [](SimConfig& c, const std::string& v) { c.duration_s = parse_double("duration_s", v); },
         [](const SimConfig& c) { return fmt_double(c.duration_s); }},
        {"radio_range_m",
         [](SimConfig& c, const std::string& v) { c.radio_range_m = parse_double("radio_range_m", v); },
         [](const SimConfig& c) { return fmt_double(c.radio_range_m); }},
        {"packet_size_bytes",
         [](SimConfig& c, const std::string& v) { c.packet_size_bytes = static_cast<int>(parse_int("packet_size_bytes", v)); },
         [](const SimConfig& c) { return std::to_string(c.packet_size_bytes); }},
        {"data_rate_bps",
         [](SimConfig& c, const std::string& v) { c.data_rate_bps = parse_double("data_rate_bps", v); },
         [](const SimConfig& c) { return fmt_double(c.data_rate_bps); }},
        {"tx_draw_mA",
         [](SimConfig& c, const std::string& v) { c.tx_draw_mA = parse_double("tx_draw_mA", v); },
         [](const SimConfig& c) { return fmt_double(c.tx_draw_mA); }},
        {"rx_draw_mA",
         [](SimConfig& c, const std::string& v) { c.rx_draw_mA = parse_double("rx_draw_mA", v); },
         [](const SimConfig& c) { return fmt_double(c.rx_draw_mA); }},
        {"init_energy_mAh",
         [](SimConfig& c, const std::string& v) { c.init_energy_mAh = parse_double("init_energy_mAh", v); },
         [](const SimConfig& c) { return fmt_double(c.init_energy_mAh); }},
        {"leader_energy_threshold_fraction",
         [](SimConfig& c, const std::string& v) { c.leader_energy_threshold_fraction = parse_double("leader_energy_threshold_fraction", v); },
         [](const SimConfig& c) { return fmt_double(c.leader_energy_threshold_fraction); }},
        {"aggregation_capacity",
         [](SimConfig& c, const std::string& v) { c.aggregation_capacity = static_cast<int>(parse_int("aggregation_capacity", v)); },
         [](const SimConfig& c) { return std::to_string(c.aggregation_capacity); }},
        {"rss_ref_dbm",
         [](SimConfig& c, const std::string& v) { c.rss_ref_dbm = parse_double("rss_ref_dbm", v); },
         [](const SimConfig& c) { return fmt_double(c.rss_ref_dbm); }},
        {"path_loss_exponent",
         [](SimConfig& c, const std::string& v) { c.path_loss_exponent = parse_double("path_loss_exponent", v); },
         [](const SimConfig& c) { return fmt_double(c.path_loss_exponent); }},
        {"ref_distance_m",
         [](SimConfig& c, const std::string& v) { c.ref_distance_m = parse_double("ref_distance_m", v); },
         [](const SimConfig& c) { return fmt_double(c.ref_distance_m); }},
        {"noise_sigma_db",
         [](SimConfig& c, const std::string& v) { c.noise_sigma_db = parse_double("noise_sigma_db", v); },
         [](const SimConfig& c) { return fmt_double(c.noise_sigma_db); }},
        {"target_speed_min_mps",
         [](SimConfig& c, const std::string& v) { c.target_speed_min_mps = parse_double("target_speed_min_mps", v); },
         [](const SimConfig& c) { return fmt_double(c.target_speed_min_mps); }},
        {"target_speed_max_mps",
         [](SimConfig& c, const std::string& v) { c.target_speed_max_mps = parse_double("target_speed_max_mps", v); },
         [](const SimConfig& c) { return fmt_double(c.target_speed_max_mps); }},
        {"mobility_step_s",
         [](SimConfig& c, const std::string& v) { c.mobility_step_s = parse_double("mobility_step_s", v); },
         [](const SimConfig& c) { return fmt_double(c.mobility_step_s); }},
        {"loss_rate",
         [](SimConfig& c, const std::string& v) { c.loss_rate = parse_double("loss_rate", v); },
         [](const SimConfig& c) { return fmt_double(c.loss_rate); }},
        {"sink_corner",
         [](SimConfig& c, const std::string& v) { c.sink_corner = sink_corner_from_string(v); },
         [](const SimConfig& c) { return to_string(c.sink_corner); }},
        {"seed",
         [](SimConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int("seed", v)); },
         [](const SimConfig& c) { return std::to_string(c.seed); }},
    };
    return t;
}

}  // namespace

RawSettings load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    RawSettings out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        out[key] = val;
    }
    return out;
}

SimConfig validate_config(const RawSettings& raw) {
    SimConfig cfg;
    for (const auto& [key, value] : raw) {
        bool known = false;
        for (const auto& f : fields()) {
            if (f.name == key) {
                f.set(cfg, value);
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown config key: " + key);
    }

    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(cfg.grid_width_m), "grid_width_m must be > 0");
    require(positive(cfg.grid_height_m), "grid_height_m must be > 0");
    require(cfg.num_references >= 1, "num_references must be >= 1");
    require(cfg.num_targets >= 0, "num_targets must be >= 0");
    require(positive(cfg.reporting_period_s), "reporting_period_s must be > 0");
    require(positive(cfg.duration_s), "duration_s must be > 0");
    require(cfg.duration_s >= cfg.reporting_period_s,
            "duration_s must be >= reporting_period_s");
    require(positive(cfg.radio_range_m), "radio_range_m must be > 0");
    require(cfg.packet_size_bytes > 0, "packet_size_bytes must be > 0");
    require(positive(cfg.data_rate_bps), "data_rate_bps must be > 0");
    require(positive(cfg.tx_draw_mA), "tx_draw_mA must be > 0");
    require(positive(cfg.rx_draw_mA), "rx_draw_mA must be > 0");
    require(positive(cfg.init_energy_mAh), "init_energy_mAh must be > 0");
    require(cfg.leader_energy_threshold_fraction >= 0.0 &&
                cfg.leader_energy_threshold_fraction <= 1.0,
            "leader_energy_threshold_fraction must be in [0,1]");
    require(cfg.aggregation_capacity >= 1, "aggregation_capacity must be >= 1");
    require(positive(cfg.path_loss_exponent), "path_loss_exponent must be > 0");
    require(positive(cfg.ref_distance_m), "ref_distance_m must be > 0");
    require(cfg.noise_sigma_db >= 0.0, "noise_sigma_db must be >= 0");
    require(cfg.target_speed_min_mps >= 0.0, "target_speed_min_mps must be >= 0");
    require(cfg.target_speed_max_mps >= cfg.target_speed_min_mps,
            "target_speed_max_mps must be >= target_speed_min_mps");
    require(positive(cfg.mobility_step_s), "mobility_step_s must be > 0");
    require(cfg.loss_rate >= 0.0 && cfg.loss_rate < 1.0, "loss_rate must be in [0,1)");
    return cfg;
}

RawSettings to_settings(const SimConfig& cfg) {
    RawSettings out;
    for (const auto& f : fields()) out[f.name] = f.get(cfg);
    return out;
}

}  // namespace wsntrack
