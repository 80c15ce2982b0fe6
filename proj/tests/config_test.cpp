#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "wsntrack/config.hpp"

using namespace wsntrack;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("config_test_tmp_") + std::to_string(counter++) + ".conf";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("defaults validate and match the documented values") {
    SimConfig cfg = validate_config({});
    CHECK(cfg.grid_width_m == 75.0);
    CHECK(cfg.grid_height_m == 65.0);
    CHECK(cfg.num_references == 56);
    CHECK(cfg.num_targets == 10);
    CHECK(cfg.reporting_period_s == 2.0);
    CHECK(cfg.duration_s == 360.0);
    CHECK(cfg.packet_size_bytes == 127);
    CHECK(cfg.init_energy_mAh == 27.0);
    CHECK(cfg.tx_draw_mA == 44.0);
    CHECK(cfg.rx_draw_mA == 49.0);
    CHECK(cfg.aggregation_capacity == 5);
    CHECK(cfg.leader_energy_threshold_fraction == 0.2);
    CHECK(cfg.rounds() == 180);
}

TEST_CASE("settings file parsing: comments, blanks, overrides") {
    TempFile f("# tracking run\n"
               "num_targets = 4\n"
               "\n"
               "radio_range_m = 12.5   # tighter radio\n"
               "sink_corner = ne\n"
               "seed = 99\n");
    SimConfig cfg = validate_config(load_settings_file(f.path));
    CHECK(cfg.num_targets == 4);
    CHECK(cfg.radio_range_m == 12.5);
    CHECK(cfg.sink_corner == SinkCorner::NorthEast);
    CHECK(cfg.seed == 99);
    CHECK(cfg.num_references == 56);  // untouched default
}

TEST_CASE("unknown keys are refused by name") {
    TempFile f("num_tragets = 4\n");
    CHECK_THROWS_WITH_AS(validate_config(load_settings_file(f.path)),
                         doctest::Contains("num_tragets"), ConfigError);
}

TEST_CASE("unreadable file names the path") {
    CHECK_THROWS_WITH_AS(load_settings_file("no/such/file.conf"),
                         doctest::Contains("no/such/file.conf"), ConfigError);
}

TEST_CASE("invariant violations name the offending key") {
    auto reject = [](const std::string& key, const std::string& value) {
        RawSettings raw{{key, value}};
        CHECK_THROWS_WITH_AS(validate_config(raw), doctest::Contains(key.c_str()),
                             ConfigError);
    };
    reject("num_targets", "-1");
    reject("num_references", "0");
    reject("grid_width_m", "0");
    reject("reporting_period_s", "0");
    reject("duration_s", "-5");
    reject("radio_range_m", "0");
    reject("packet_size_bytes", "0");
    reject("data_rate_bps", "0");
    reject("init_energy_mAh", "-1");
    reject("leader_energy_threshold_fraction", "1.5");
    reject("aggregation_capacity", "0");
    reject("loss_rate", "1");
    reject("mobility_step_s", "0");
    reject("num_targets", "three");  // unparseable value
}

TEST_CASE("duration must cover at least one reporting period") {
    RawSettings raw{{"duration_s", "1"}, {"reporting_period_s", "2"}};
    CHECK_THROWS_AS(validate_config(raw), ConfigError);
}

TEST_CASE("speed bounds must be ordered") {
    RawSettings raw{{"target_speed_min_mps", "2"}, {"target_speed_max_mps", "1"}};
    CHECK_THROWS_AS(validate_config(raw), ConfigError);
}

TEST_CASE("to_settings round-trips through validate_config") {
    RawSettings raw{{"num_targets", "7"},
                    {"noise_sigma_db", "2"},
                    {"sink_corner", "se"},
                    {"target_speed_min_mps", "0"},
                    {"target_speed_max_mps", "0"}};
    SimConfig cfg = validate_config(raw);
    SimConfig again = validate_config(to_settings(cfg));
    CHECK(cfg == again);
}

TEST_CASE("every sink corner spelling parses") {
    CHECK(sink_corner_from_string("sw") == SinkCorner::SouthWest);
    CHECK(sink_corner_from_string("se") == SinkCorner::SouthEast);
    CHECK(sink_corner_from_string("nw") == SinkCorner::NorthWest);
    CHECK(sink_corner_from_string("ne") == SinkCorner::NorthEast);
    CHECK_THROWS(sink_corner_from_string("north"));
    for (SinkCorner c : {SinkCorner::SouthWest, SinkCorner::SouthEast,
                         SinkCorner::NorthWest, SinkCorner::NorthEast})
        CHECK(sink_corner_from_string(to_string(c)) == c);
}
