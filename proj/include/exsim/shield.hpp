#pragma once

#include "exsim/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exsim {

/// Per-venue execution order for one decision interval: volume in shares and
/// the worst acceptable (limit) price in ticks. Sell side throughout.
struct ExecAction {
    std::vector<Shares> volume;     // >= 0 per venue
    std::vector<Ticks> limit_price; // >= 1 per venue

    static ExecAction zeros(std::size_t venues) {
        ExecAction a;
        a.volume.assign(venues, 0);
        a.limit_price.assign(venues, 1);
        return a;
    }
    std::size_t venues() const { return volume.size(); }
    Shares total_volume() const {
        Shares s = 0;
        for (auto v : volume) s += v;
        return s;
    }
    bool operator==(const ExecAction&) const = default;
};

enum class ViolationKind : std::uint8_t { Volume = 0, Price = 1, SelfTrade = 2 };

inline const char* violation_kind_str(ViolationKind k) {
    switch (k) {
        case ViolationKind::Volume: return "volume";
        case ViolationKind::Price: return "price";
        case ViolationKind::SelfTrade: return "self_trade";
    }
    return "unknown";
}

struct ViolationReport {
    std::int64_t step = 0;
    VenueId venue = 0;
    ViolationKind kind = ViolationKind::Volume;
    std::int64_t raw_value = 0;
    std::int64_t limit_value = 0;
    std::int64_t magnitude = 0; // > 0 for every emitted report
};

/// Hard constraints. Fractions are exact parts-per-million so the cap and
/// collar arithmetic is integer and matches the audit circuit bit for bit.
struct ConstraintSet {
    Ppm alpha_ppm = 100'000; // participation cap, default 10%
    Ppm beta_ppm = 5'000;    // price collar below best bid, default 0.5%
    bool self_trade_guard = true;

    Shares volume_cap(Shares vhat) const { return mul_ppm_floor(vhat, alpha_ppm); }
    Ticks price_floor(Ticks best_bid) const { return mul_ppm_ceil(best_bid, kPpmOne - beta_ppm); }
};

/// Public market inputs the shield (and later the audit circuit) sees for one
/// decision step: previous-interval traded volume and best bid per venue.
struct ShieldInputs {
    std::vector<Shares> vhat;            // >= 0 per venue
    std::vector<Ticks> best_bid;         // 0 when the venue has no bid
    std::vector<bool> has_bid;
};

/// A live order of our own, for the cross-venue self-trade guard.
struct LiveOrder {
    VenueId venue = 0;
    OrderId order_id = 0;
    Side side = Side::Sell;
    Ticks price_ticks = 0;
    Shares qty = 0;
};

struct ShieldResult {
    ExecAction safe;
    std::vector<ViolationReport> reports;
};

/// Runtime constraint filter between policy and market.
///
/// project() returns the closest compliant action: volumes clamped to
/// floor(alpha * vhat), prices raised to ceil(bid * (1 - beta)), and orders
/// that would cross a live own opposite-side order on any venue blocked.
/// check() emits the same reports without modifying the action. Both are pure
/// functions of (action, inputs, live orders).
class Shield {
public:
    explicit Shield(ConstraintSet constraints) : constraints_(constraints) {}

    ShieldResult project(const ExecAction& raw, const ShieldInputs& in,
                         const std::vector<LiveOrder>& live_own, std::int64_t step = 0) const;

    std::vector<ViolationReport> check(const ExecAction& raw, const ShieldInputs& in,
                                       const std::vector<LiveOrder>& live_own,
                                       std::int64_t step = 0) const;

    const ConstraintSet& constraints() const { return constraints_; }

private:
    ShieldResult run(const ExecAction& raw, const ShieldInputs& in,
                     const std::vector<LiveOrder>& live_own, std::int64_t step) const;

    ConstraintSet constraints_;
};

/// True when a sell at `price` on `venue` would cross one of our live buy
/// orders (any venue), or symmetrically for a buy against live sells.
bool would_self_cross(Side side, Ticks price, const std::vector<LiveOrder>& live_own);

} // namespace exsim
