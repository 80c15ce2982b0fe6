#pragma once

#include <cstdint>
#include <vector>

#include "wsntrack/topology.hpp"

namespace wsntrack {

enum class ChargeDirection { Tx, Rx };

// mAh drained by one frame: draw_mA * airtime_hours, with
// airtime = packet_size_bytes * 8 / data_rate_bps seconds.
double per_packet_energy(double draw_mA, int packet_size_bytes, double data_rate_bps);

// Extrapolated lifetime from a steady per-round drain. Zero consumption maps
// to +infinity.
double battery_life(double consumption_per_round_mAh, double init_mAh,
                    double round_period_s);

// Per-node battery book-keeping. Remaining energy is derived from the tx/rx
// counters rather than accumulated per charge, so
//   consumed == tx_count*tx_cost + rx_count*rx_cost
// holds bit-exactly until a node clamps at depletion. The sink is mains
// powered: it is charged like everyone else but never reports depleted.
class EnergyLedger {
public:
    EnergyLedger() = default;
    EnergyLedger(std::size_t node_count, NodeId sink_id, double init_mAh,
                 double tx_cost_mAh, double rx_cost_mAh);

    // Decrements remaining energy by one packet cost (clamped at 0).
    // Charging an already depleted node is a no-op that sets a sticky flag.
    void charge(NodeId node, ChargeDirection dir);

    double remaining_mAh(NodeId node) const;
    double consumed_mAh(NodeId node) const;
    bool depleted(NodeId node) const;
    bool depleted_flag(NodeId node) const { return entries_[node].flagged; }

    std::uint64_t tx_count(NodeId node) const { return entries_[node].tx; }
    std::uint64_t rx_count(NodeId node) const { return entries_[node].rx; }

    double tx_cost_mAh() const { return tx_cost_; }
    double rx_cost_mAh() const { return rx_cost_; }
    double init_mAh() const { return init_; }
    std::size_t node_count() const { return entries_.size(); }

    double total_consumed_mAh() const;
    std::uint64_t total_tx_count() const;
    std::uint64_t total_rx_count() const;

private:
    struct Entry {
        std::uint64_t tx = 0;
        std::uint64_t rx = 0;
        bool flagged = false;  // a charge was attempted while depleted
    };

    std::vector<Entry> entries_;
    NodeId sink_id_ = 0;
    double init_ = 0.0;
    double tx_cost_ = 0.0;
    double rx_cost_ = 0.0;
};

}  // namespace wsntrack
