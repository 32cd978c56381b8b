#include "exsim/shield.hpp"

#include <stdexcept>

namespace exsim {

bool would_self_cross(Side side, Ticks price, const std::vector<LiveOrder>& live_own) {
    for (const LiveOrder& lo : live_own) {
        if (lo.qty <= 0) continue;
        if (side == Side::Sell && lo.side == Side::Buy && lo.price_ticks >= price) return true;
        if (side == Side::Buy && lo.side == Side::Sell && lo.price_ticks <= price) return true;
    }
    return false;
}

ShieldResult Shield::run(const ExecAction& raw, const ShieldInputs& in,
                         const std::vector<LiveOrder>& live_own, std::int64_t step) const {
    const std::size_t m = raw.venues();
    if (in.vhat.size() != m || in.best_bid.size() != m || in.has_bid.size() != m)
        throw std::invalid_argument("shield inputs must cover every venue of the action");

    ShieldResult out;
    out.safe = raw;

    for (std::size_t i = 0; i < m; ++i) {
        const VenueId venue = static_cast<VenueId>(i);
        const Shares v_raw = raw.volume[i];
        const Ticks p_raw = raw.limit_price[i];

        if (v_raw <= 0) {
            out.safe.volume[i] = 0;
            continue; // no order on this venue, nothing to constrain
        }
        if (!in.has_bid[i]) {
            out.safe.volume[i] = 0; // no reference price, venue skipped
            continue;
        }

        const Shares cap = constraints_.volume_cap(in.vhat[i]);
        if (v_raw > cap) {
            out.safe.volume[i] = cap;
            out.reports.push_back({step, venue, ViolationKind::Volume, v_raw, cap, v_raw - cap});
        }

        const Ticks floor_price = constraints_.price_floor(in.best_bid[i]);
        if (p_raw < floor_price) {
            out.safe.limit_price[i] = floor_price;
            // Magnitude convention: shortfall in ticks times the raw shares.
            out.reports.push_back(
                {step, venue, ViolationKind::Price, p_raw, floor_price, (floor_price - p_raw) * v_raw});
        }

        if (constraints_.self_trade_guard && out.safe.volume[i] > 0 &&
            would_self_cross(Side::Sell, out.safe.limit_price[i], live_own)) {
            out.reports.push_back(
                {step, venue, ViolationKind::SelfTrade, out.safe.volume[i], 0, out.safe.volume[i]});
            out.safe.volume[i] = 0; // block the order rather than cancel the resting one
        }
    }
    return out;
}

ShieldResult Shield::project(const ExecAction& raw, const ShieldInputs& in,
                             const std::vector<LiveOrder>& live_own, std::int64_t step) const {
    return run(raw, in, live_own, step);
}

std::vector<ViolationReport> Shield::check(const ExecAction& raw, const ShieldInputs& in,
                                           const std::vector<LiveOrder>& live_own,
                                           std::int64_t step) const {
    return run(raw, in, live_own, step).reports;
}

} // namespace exsim
