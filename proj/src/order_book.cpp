#include "exsim/order_book.hpp"

#include <algorithm>
#include <stdexcept>

namespace exsim {

namespace {

bool sell_price_ok(Ticks level, Ticks limit) { return level >= limit; } // selling into bids
bool buy_price_ok(Ticks level, Ticks limit) { return level <= limit; }  // buying from asks

bool sell_rest_crosses(Ticks own_bid, Ticks rest_ask) { return own_bid >= rest_ask; }
bool buy_rest_crosses(Ticks own_ask, Ticks rest_bid) { return own_ask <= rest_bid; }

} // namespace

template <typename BookMap>
void OrderBook::match_against(BookMap& opposite, const Order& order, Shares& remaining,
                              std::vector<Fill>& fills, bool price_ok(Ticks, Ticks)) {
    auto level_it = opposite.begin();
    while (remaining > 0 && level_it != opposite.end()) {
        if (!order.is_market && !price_ok(level_it->first, order.price_ticks)) break;
        auto& queue = level_it->second;
        for (auto rest_it = queue.begin(); remaining > 0 && rest_it != queue.end();) {
            if (rest_it->trader_id == order.trader_id) {
                ++rest_it; // same-trader resting order: skip, never match
                continue;
            }
            const Shares traded = std::min(remaining, rest_it->qty);
            Fill fill;
            fill.ts = order.ts;
            fill.venue_id = venue_;
            fill.maker_order_id = rest_it->order_id;
            fill.taker_order_id = order.order_id;
            fill.maker_trader_id = rest_it->trader_id;
            fill.taker_trader_id = order.trader_id;
            fill.price_ticks = level_it->first;
            fill.qty = traded;
            fills.push_back(fill);
            remaining -= traded;
            rest_it->qty -= traded;
            if (rest_it->qty == 0) {
                rest_it = queue.erase(rest_it);
            } else {
                ++rest_it;
            }
        }
        if (queue.empty()) {
            level_it = opposite.erase(level_it);
        } else {
            ++level_it;
        }
    }
}

template <typename BookMap>
void OrderBook::cancel_own_crossing(BookMap& opposite, AgentId trader, Ticks rest_price,
                                    bool crosses(Ticks, Ticks)) {
    for (auto level_it = opposite.begin(); level_it != opposite.end();) {
        if (!crosses(level_it->first, rest_price)) break;
        auto& queue = level_it->second;
        for (auto it = queue.begin(); it != queue.end();) {
            if (it->trader_id == trader) {
                it = queue.erase(it);
            } else {
                ++it;
            }
        }
        if (queue.empty()) {
            level_it = opposite.erase(level_it);
        } else {
            ++level_it;
        }
    }
}

SubmitResult OrderBook::submit(const Order& order) {
    if (order.qty <= 0) throw std::invalid_argument("InvalidQty: order qty must be positive");
    if (!order.is_market && order.price_ticks <= 0)
        throw std::invalid_argument("InvalidPrice: limit price must be >= 1 tick");

    SubmitResult result;
    Shares remaining = order.qty;

    if (order.side == Side::Sell) {
        match_against(bids_, order, remaining, result.fills, sell_price_ok);
    } else {
        match_against(asks_, order, remaining, result.fills, buy_price_ok);
    }

    for (const Fill& f : result.fills) {
        fills_.push_back(f);
        cum_qty_.push_back((cum_qty_.empty() ? 0 : cum_qty_.back()) + f.qty);
    }

    if (remaining > 0) {
        if (order.is_market) {
            result.discarded_qty = remaining;
        } else {
            // Any opposite-side liquidity still crossing our rest price must be
            // our own (everything else was matched); cancel the older orders so
            // the book never rests crossed.
            if (order.side == Side::Sell) {
                cancel_own_crossing(bids_, order.trader_id, order.price_ticks, sell_rest_crosses);
                asks_[order.price_ticks].push_back({order.order_id, order.trader_id, remaining, order.ts});
            } else {
                cancel_own_crossing(asks_, order.trader_id, order.price_ticks, buy_rest_crosses);
                bids_[order.price_ticks].push_back({order.order_id, order.trader_id, remaining, order.ts});
            }
            result.resting_qty = remaining;
        }
    }
    return result;
}

Shares OrderBook::cancel(OrderId order_id) {
    auto scan = [order_id](auto& book) -> Shares {
        for (auto level_it = book.begin(); level_it != book.end(); ++level_it) {
            auto& queue = level_it->second;
            for (auto it = queue.begin(); it != queue.end(); ++it) {
                if (it->order_id == order_id) {
                    const Shares removed = it->qty;
                    queue.erase(it);
                    if (queue.empty()) book.erase(level_it);
                    return removed;
                }
            }
        }
        return 0;
    };
    const Shares from_bids = scan(bids_);
    if (from_bids > 0) return from_bids;
    return scan(asks_);
}

Shares OrderBook::live_qty(OrderId order_id) const {
    auto scan = [order_id](const auto& book) -> Shares {
        for (const auto& [price, queue] : book) {
            (void)price;
            for (const auto& rest : queue) {
                if (rest.order_id == order_id) return rest.qty;
            }
        }
        return 0;
    };
    const Shares from_bids = scan(bids_);
    if (from_bids > 0) return from_bids;
    return scan(asks_);
}

BookSnapshot OrderBook::snapshot(SimTime now, SimTime trailing_window_ns) const {
    BookSnapshot snap;
    snap.at = now;
    int level = 0;
    for (const auto& [price, queue] : bids_) {
        if (level >= kDepthLevels) break;
        Shares total = 0;
        for (const auto& rest : queue) total += rest.qty;
        snap.bid_price[level] = price;
        snap.bid_qty[level] = total;
        ++level;
    }
    if (level > 0) {
        snap.has_bid = true;
        snap.best_bid = snap.bid_price[0];
    }
    level = 0;
    for (const auto& [price, queue] : asks_) {
        if (level >= kDepthLevels) break;
        Shares total = 0;
        for (const auto& rest : queue) total += rest.qty;
        snap.ask_price[level] = price;
        snap.ask_qty[level] = total;
        ++level;
    }
    if (level > 0) {
        snap.has_ask = true;
        snap.best_ask = snap.ask_price[0];
    }
    snap.trailing_volume = volume_between(now - trailing_window_ns, now);
    return snap;
}

Shares OrderBook::volume_between(SimTime from, SimTime to) const {
    if (fills_.empty() || from >= to) return 0;
    auto lo = std::lower_bound(fills_.begin(), fills_.end(), from,
                               [](const Fill& f, SimTime t) { return f.ts < t; });
    auto hi = std::lower_bound(fills_.begin(), fills_.end(), to,
                               [](const Fill& f, SimTime t) { return f.ts < t; });
    if (lo == hi) return 0;
    const std::size_t lo_idx = static_cast<std::size_t>(lo - fills_.begin());
    const std::size_t hi_idx = static_cast<std::size_t>(hi - fills_.begin());
    const Shares below = lo_idx == 0 ? 0 : cum_qty_[lo_idx - 1];
    return cum_qty_[hi_idx - 1] - below;
}

Shares OrderBook::interval_volume(std::int64_t index, SimTime interval_len_ns) const {
    return volume_between(index * interval_len_ns, (index + 1) * interval_len_ns);
}

} // namespace exsim
