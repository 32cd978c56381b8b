#pragma once

#include "exsim/types.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace exsim {

/// A limit or market order as submitted to one venue.
struct Order {
    OrderId order_id = 0;   // unique per venue per day, assigned by the sender
    AgentId trader_id = -1;
    VenueId venue_id = 0;
    Side side = Side::Buy;
    Ticks price_ticks = 0;  // ignored when is_market
    Shares qty = 0;
    bool is_market = false;
    SimTime ts = 0;
};

/// One trade. price equals the maker's resting limit price.
struct Fill {
    SimTime ts = 0;
    VenueId venue_id = 0;
    OrderId maker_order_id = 0;
    OrderId taker_order_id = 0;
    AgentId maker_trader_id = -1;
    AgentId taker_trader_id = -1;
    Ticks price_ticks = 0;
    Shares qty = 0;
};

inline constexpr int kDepthLevels = 5;

/// Top-of-book view plus aggregated depth at the best kDepthLevels prices.
struct BookSnapshot {
    SimTime at = 0;
    bool has_bid = false;
    bool has_ask = false;
    Ticks best_bid = 0;
    Ticks best_ask = 0;
    std::array<Ticks, kDepthLevels> bid_price{};
    std::array<Shares, kDepthLevels> bid_qty{};
    std::array<Ticks, kDepthLevels> ask_price{};
    std::array<Shares, kDepthLevels> ask_qty{};
    Shares trailing_volume = 0; // shares traded in the trailing interval window

    std::optional<double> mid() const {
        if (!has_bid || !has_ask) return std::nullopt;
        return 0.5 * static_cast<double>(best_bid + best_ask);
    }
    Shares total_bid_depth() const {
        Shares s = 0;
        for (auto q : bid_qty) s += q;
        return s;
    }
    Shares total_ask_depth() const {
        Shares s = 0;
        for (auto q : ask_qty) s += q;
        return s;
    }
};

struct SubmitResult {
    std::vector<Fill> fills;
    Shares resting_qty = 0;   // remainder left on the book (0 for market orders)
    Shares discarded_qty = 0; // unfilled market-order remainder
};

/// Per-venue limit order book, price-time priority, same-trader matches
/// skipped at the exchange. The incoming order skips its own resting orders
/// and matches deeper liquidity; if the remainder would rest crossed against
/// an own opposite-side order, the older own order is cancelled so the book
/// never rests crossed.
class OrderBook {
public:
    explicit OrderBook(VenueId venue = 0) : venue_(venue) {}

    SubmitResult submit(const Order& order);

    /// Removes the residual quantity of an order. Returns the quantity
    /// removed; 0 for unknown or already-gone ids (idempotent).
    Shares cancel(OrderId order_id);

    BookSnapshot snapshot(SimTime now, SimTime trailing_window_ns) const;

    /// Total shares traded with fill ts inside interval `index`, where
    /// intervals are [index*len, (index+1)*len). Each trade counted once.
    Shares interval_volume(std::int64_t index, SimTime interval_len_ns) const;

    /// Shares traded with ts in [from, to).
    Shares volume_between(SimTime from, SimTime to) const;

    const std::vector<Fill>& fills() const { return fills_; }
    VenueId venue() const { return venue_; }

    std::optional<Ticks> best_bid() const {
        return bids_.empty() ? std::nullopt : std::optional<Ticks>(bids_.begin()->first);
    }
    std::optional<Ticks> best_ask() const {
        return asks_.empty() ? std::nullopt : std::optional<Ticks>(asks_.begin()->first);
    }

    /// Residual quantity of a live order, 0 if not resting.
    Shares live_qty(OrderId order_id) const;

private:
    struct Resting {
        OrderId order_id;
        AgentId trader_id;
        Shares qty;
        SimTime ts;
    };

    // Bids keyed descending so begin() is the best price on both sides.
    using BidMap = std::map<Ticks, std::deque<Resting>, std::greater<Ticks>>;
    using AskMap = std::map<Ticks, std::deque<Resting>, std::less<Ticks>>;

    template <typename BookMap>
    void match_against(BookMap& opposite, const Order& order, Shares& remaining,
                       std::vector<Fill>& fills, bool price_ok(Ticks level, Ticks limit));

    template <typename BookMap>
    void cancel_own_crossing(BookMap& opposite, AgentId trader, Ticks rest_price, bool crosses(Ticks, Ticks));

    VenueId venue_;
    BidMap bids_;
    AskMap asks_;
    std::vector<Fill> fills_;
    // Cumulative traded shares indexed by fill order; used with fill ts for
    // O(log n) interval sums.
    std::vector<Shares> cum_qty_;
};

} // namespace exsim
