#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsntrack/channel.hpp"
#include "wsntrack/rng.hpp"

using namespace wsntrack;

namespace {
const ChannelParams kDefault{};  // -40 dBm @ 1 m, eta 2.4, sigma 0, range 16
}

TEST_CASE("rss at the reference distance equals the reference power") {
    CHECK(rss_at_distance(1.0, kDefault) == doctest::Approx(-40.0).epsilon(1e-12));
}

TEST_CASE("each decade of distance costs 10*eta dB") {
    // hand evaluation: rss(10) = -40 - 10*2.4*log10(10) = -64
    CHECK(rss_at_distance(10.0, kDefault) == doctest::Approx(-64.0).epsilon(1e-12));
    CHECK(rss_at_distance(100.0, kDefault) == doctest::Approx(-88.0).epsilon(1e-12));
}

TEST_CASE("rss decreases monotonically with distance") {
    double prev = rss_at_distance(0.1, kDefault);
    for (double d = 0.2; d < 120.0; d += 0.3) {
        double cur = rss_at_distance(d, kDefault);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("non-positive distance is rejected") {
    CHECK_THROWS_AS(rss_at_distance(0.0, kDefault), std::domain_error);
    CHECK_THROWS_AS(rss_at_distance(-3.0, kDefault), std::domain_error);
}

TEST_CASE("distance_from_rss inverts the noiseless model exactly") {
    for (double d : {0.5, 1.0, 2.0, 7.3, 16.0, 55.0}) {
        double rss = rss_at_distance(d, kDefault);
        CHECK(distance_from_rss(rss, kDefault) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("noise draw shifts rss by sigma times the draw") {
    ChannelParams noisy = kDefault;
    noisy.noise_sigma_db = 2.0;
    double base = rss_at_distance(5.0, noisy);
    CHECK(rss_at_distance(5.0, noisy, 1.5) == doctest::Approx(base + 3.0));
    CHECK(rss_at_distance(5.0, noisy, -1.0) == doctest::Approx(base - 2.0));
    // sigma = 0 ignores the draw entirely
    CHECK(rss_at_distance(5.0, kDefault, 123.0) ==
          doctest::Approx(rss_at_distance(5.0, kDefault)));
}

TEST_CASE("positive noise reads as shorter apparent distance") {
    ChannelParams noisy = kDefault;
    noisy.noise_sigma_db = 2.0;
    double rss_up = rss_at_distance(8.0, noisy, 1.0);
    double rss_down = rss_at_distance(8.0, noisy, -1.0);
    CHECK(distance_from_rss(rss_up, noisy) < 8.0);
    CHECK(distance_from_rss(rss_down, noisy) > 8.0);
}

TEST_CASE("in_range is the boundary-inclusive disk model") {
    CHECK(in_range({0, 0}, {16, 0}, kDefault));        // exactly at range
    CHECK(in_range({0, 0}, {0, 0}, kDefault));         // same point
    CHECK(in_range({1, 1}, {1 + 11.3, 1 + 11.3}, kDefault));
    CHECK_FALSE(in_range({0, 0}, {16.0001, 0}, kDefault));
    CHECK_FALSE(in_range({0, 0}, {12, 12}, kDefault));  // ~16.97 m
}

TEST_CASE("connectivity ignores noise: the disk never moves with sigma") {
    ChannelParams noisy = kDefault;
    noisy.noise_sigma_db = 6.0;
    RngStream rng(7, "channel");
    for (int i = 0; i < 50; ++i) {
        Vec2 a{rng.uniform(0, 75), rng.uniform(0, 65)};
        Vec2 b{rng.uniform(0, 75), rng.uniform(0, 65)};
        CHECK(in_range(a, b, noisy) == in_range(a, b, kDefault));
    }
}
