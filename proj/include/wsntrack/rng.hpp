#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsntrack {

// All randomness in a simulation flows from one master seed, split into named
// substreams ("topology", "mobility", "channel", "loss"). Consuming draws from
// one stream never perturbs another, so e.g. enabling RSS noise leaves target
// trajectories untouched.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_name)
        : gen_(mix(seed, fnv1a(stream_name))) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    double standard_normal() {
        return std::normal_distribution<double>(0.0, 1.0)(gen_);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        return std::bernoulli_distribution(p)(gen_);
    }

private:
    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 14695981039346656037ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }

    // splitmix64 finalizer; keeps nearby (seed, tag) pairs decorrelated.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * b;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

// FNV-1a running hash, used for trajectory digests.
class Digest64 {
public:
    void feed(double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h_ ^= (bits >> (8 * i)) & 0xff;
            h_ *= 1099511628211ull;
        }
    }

    void feed(std::uint64_t v) { feed(static_cast<double>(v)); }

    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 14695981039346656037ull;
};

}  // namespace wsntrack
