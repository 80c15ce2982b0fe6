#include "wsntrack/energy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wsntrack {

double per_packet_energy(double draw_mA, int packet_size_bytes, double data_rate_bps) {
    if (!(draw_mA > 0.0) || packet_size_bytes <= 0 || !(data_rate_bps > 0.0))
        throw std::domain_error("per_packet_energy: all inputs must be positive");
    double airtime_s = packet_size_bytes * 8.0 / data_rate_bps;
    return draw_mA * airtime_s / 3600.0;
}

double battery_life(double consumption_per_round_mAh, double init_mAh,
                    double round_period_s) {
    if (consumption_per_round_mAh < 0.0)
        throw std::domain_error("battery_life: consumption must be >= 0");
    if (consumption_per_round_mAh == 0.0)
        return std::numeric_limits<double>::infinity();
    return init_mAh / consumption_per_round_mAh * round_period_s;
}

EnergyLedger::EnergyLedger(std::size_t node_count, NodeId sink_id, double init_mAh,
                           double tx_cost_mAh, double rx_cost_mAh)
    : entries_(node_count),
      sink_id_(sink_id),
      init_(init_mAh),
      tx_cost_(tx_cost_mAh),
      rx_cost_(rx_cost_mAh) {}

void EnergyLedger::charge(NodeId node, ChargeDirection dir) {
    Entry& e = entries_[node];
    if (depleted(node)) {
        e.flagged = true;
        return;
    }
    if (dir == ChargeDirection::Tx)
        ++e.tx;
    else
        ++e.rx;
}

double EnergyLedger::remaining_mAh(NodeId node) const {
    const Entry& e = entries_[node];
    return std::max(0.0, init_ - (e.tx * tx_cost_ + e.rx * rx_cost_));
}

double EnergyLedger::consumed_mAh(NodeId node) const {
    const Entry& e = entries_[node];
    return std::min(init_, e.tx * tx_cost_ + e.rx * rx_cost_);
}

bool EnergyLedger::depleted(NodeId node) const {
    if (node == sink_id_) return false;  // mains powered
    return remaining_mAh(node) <= 0.0;
}

double EnergyLedger::total_consumed_mAh() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        sum += consumed_mAh(static_cast<NodeId>(i));
    return sum;
}

std::uint64_t EnergyLedger::total_tx_count() const {
    std::uint64_t n = 0;
    for (const Entry& e : entries_) n += e.tx;
    return n;
}

std::uint64_t EnergyLedger::total_rx_count() const {
    std::uint64_t n = 0;
    for (const Entry& e : entries_) n += e.rx;
    return n;
}

}  // namespace wsntrack
