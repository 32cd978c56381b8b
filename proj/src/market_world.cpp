#include "exsim/market_world.hpp"

#include <algorithm>
#include <cmath>

namespace exsim {

// ---------------------------------------------------------------------------
// ExchangeAgent
// ---------------------------------------------------------------------------

void ExchangeAgent::process_order(Kernel& kernel, Order order) {
    order.ts = kernel.now();
    order.venue_id = venue_;
    const SubmitResult result = book_.submit(order);
    for (const Fill& fill : result.fills) {
        if (report_subscribers_.count(fill.maker_trader_id) > 0)
            kernel.send(id(), fill.maker_trader_id, ExecReportMsg{fill, true});
        if (report_subscribers_.count(fill.taker_trader_id) > 0)
            kernel.send(id(), fill.taker_trader_id, ExecReportMsg{fill, false});
    }
}

void ExchangeAgent::on_event(Kernel& kernel, const Event& event) {
    if (const auto* msg = std::get_if<NewOrderMsg>(&event.payload)) {
        process_order(kernel, msg->order);
    } else if (const auto* msg = std::get_if<CancelMsg>(&event.payload)) {
        book_.cancel(msg->order_id);
    } else if (const auto* msg = std::get_if<RequoteMsg>(&event.payload)) {
        for (OrderId id : msg->cancel_ids) book_.cancel(id);
        for (const Order& order : msg->orders) process_order(kernel, order);
    } else if (const auto* msg = std::get_if<SnapshotReqMsg>(&event.payload)) {
        SnapshotReplyMsg reply;
        reply.venue_id = venue_;
        reply.snap = book_.snapshot(kernel.now(), interval_ns_);
        kernel.send(id(), msg->requester, reply);
    } else if (const auto* msg = std::get_if<CaptureMsg>(&event.payload)) {
        if (sink_ != nullptr) sink_->store(msg->step, venue_, book_.snapshot(kernel.now(), interval_ns_));
    }
}

// ---------------------------------------------------------------------------
// Market maker
// ---------------------------------------------------------------------------

MmQuotes market_maker_quotes(double fundamental_ticks, Ticks half_spread, double skew_per_share,
                             Shares inventory) {
    const Ticks fair = static_cast<Ticks>(std::llround(fundamental_ticks));
    const Ticks skew = static_cast<Ticks>(std::llround(skew_per_share * static_cast<double>(inventory)));
    MmQuotes q;
    q.bid = std::max<Ticks>(1, fair - half_spread - skew);
    q.ask = std::max<Ticks>(q.bid + 1, fair + half_spread - skew);
    return q;
}

void MarketMakerAgent::start(Kernel& kernel, SimTime first_wake, SimTime session_end) {
    session_end_ = session_end;
    kernel.wakeup(id(), first_wake);
}

void MarketMakerAgent::on_event(Kernel& kernel, const Event& event) {
    if (std::get_if<WakeupMsg>(&event.payload) != nullptr) {
        const MmQuotes q = market_maker_quotes(fundamental_->value_at(kernel.now()),
                                               config_->mm_half_spread, config_->mm_skew_per_share,
                                               inventory_);
        RequoteMsg msg;
        if (live_bid_ != 0) msg.cancel_ids.push_back(live_bid_);
        if (live_ask_ != 0) msg.cancel_ids.push_back(live_ask_);

        const auto make_order = [&](Side side, Ticks price) {
            Order o;
            o.order_id = (static_cast<OrderId>(id()) + 1) << 40 | ++local_seq_;
            o.trader_id = id();
            o.venue_id = venue_;
            o.side = side;
            o.price_ticks = price;
            o.qty = config_->mm_quote_size;
            my_orders_[o.order_id] = side;
            return o;
        };
        Order bid = make_order(Side::Buy, q.bid);
        Order ask = make_order(Side::Sell, q.ask);
        live_bid_ = bid.order_id;
        live_ask_ = ask.order_id;
        msg.orders.push_back(bid);
        msg.orders.push_back(ask);
        kernel.send(id(), venue_agent_, std::move(msg));

        const SimTime next = kernel.now() + config_->mm_requote_ns;
        if (next <= session_end_) kernel.wakeup(id(), next);
    } else if (const auto* rep = std::get_if<ExecReportMsg>(&event.payload)) {
        const OrderId mine = rep->is_maker ? rep->fill.maker_order_id : rep->fill.taker_order_id;
        auto it = my_orders_.find(mine);
        if (it != my_orders_.end()) {
            inventory_ += it->second == Side::Buy ? rep->fill.qty : -rep->fill.qty;
        }
    }
}

// ---------------------------------------------------------------------------
// Noise traders
// ---------------------------------------------------------------------------

NoiseIntent noise_intent(const ScenarioConfig& config, RngStream& rng) {
    NoiseIntent intent;
    intent.side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
    intent.is_market = rng.bernoulli(config.noise_market_prob);
    intent.qty = rng.uniform_int(config.noise_min_size, config.noise_max_size);
    intent.limit_offset = intent.is_market ? 0 : rng.uniform_int(0, config.noise_limit_band - 1);
    return intent;
}

double NoiseAgent::u_profile(const ScenarioConfig& config, SimTime t) {
    const SimTime session = config.session_length_ns();
    double x = session > 0
                   ? 2.0 * static_cast<double>(t - config.warmup_ns) / static_cast<double>(session) - 1.0
                   : 0.0;
    x = std::clamp(x, -1.0, 1.0);
    return config.noise_u_base + config.noise_u_amp * x * x;
}

void NoiseAgent::start(Kernel& kernel, SimTime session_end) {
    session_end_ = session_end;
    const double mean_size =
        0.5 * static_cast<double>(config_->noise_min_size + config_->noise_max_size);
    const double orders_per_agent_day =
        config_->noise_daily_shares / mean_size / static_cast<double>(config_->n_noise);
    const double mean_u = config_->noise_u_base + config_->noise_u_amp / 3.0;
    const double session_ns = static_cast<double>(session_end);
    const double base_rate_per_ns = orders_per_agent_day / (session_ns * mean_u);
    rate_max_per_ns_ = base_rate_per_ns * (config_->noise_u_base + config_->noise_u_amp);
    schedule_next(kernel);
}

void NoiseAgent::schedule_next(Kernel& kernel) {
    const double dt = rng_.exponential(rate_max_per_ns_);
    const SimTime next = kernel.now() + std::max<SimTime>(1, static_cast<SimTime>(dt));
    if (next <= session_end_) kernel.wakeup(id(), next);
}

void NoiseAgent::on_event(Kernel& kernel, const Event& event) {
    if (std::get_if<WakeupMsg>(&event.payload) != nullptr) {
        // Thinning: accept at the profile-to-peak ratio so wake times follow
        // the U-shaped inhomogeneous Poisson intensity exactly.
        const double u = u_profile(*config_, kernel.now());
        const double u_max = config_->noise_u_base + config_->noise_u_amp;
        if (rng_.uniform() < u / u_max) {
            const NoiseIntent intent = noise_intent(*config_, rng_);
            const VenueId venue = static_cast<VenueId>(rng_.uniform_int(0, venue_count_ - 1));
            if (intent.is_market) {
                Order o;
                o.order_id = (static_cast<OrderId>(id()) + 1) << 40 | ++local_seq_;
                o.trader_id = id();
                o.side = intent.side;
                o.qty = intent.qty;
                o.is_market = true;
                kernel.send(id(), venue, NewOrderMsg{o});
            } else {
                pending_ = intent;
                pending_venue_ = venue;
                kernel.send(id(), venue, SnapshotReqMsg{id()});
            }
        }
        schedule_next(kernel);
    } else if (const auto* reply = std::get_if<SnapshotReplyMsg>(&event.payload)) {
        if (!pending_.has_value()) return;
        const NoiseIntent intent = *pending_;
        pending_.reset();
        const BookSnapshot& snap = reply->snap;
        Ticks price = 0;
        if (intent.side == Side::Buy) {
            if (!snap.has_bid) return;
            price = snap.best_bid - intent.limit_offset;
        } else {
            if (!snap.has_ask) return;
            price = snap.best_ask + intent.limit_offset;
        }
        if (price < 1) return;
        Order o;
        o.order_id = (static_cast<OrderId>(id()) + 1) << 40 | ++local_seq_;
        o.trader_id = id();
        o.side = intent.side;
        o.price_ticks = price;
        o.qty = intent.qty;
        kernel.send(id(), pending_venue_, NewOrderMsg{o});
    }
}

// ---------------------------------------------------------------------------
// Momentum traders
// ---------------------------------------------------------------------------

int momentum_signal(const std::deque<std::pair<SimTime, double>>& mids, SimTime now,
                    SimTime short_window_ns, SimTime long_window_ns, double threshold_ticks) {
    if (mids.size() < 2) return 0;
    double short_sum = 0.0, long_sum = 0.0;
    int short_n = 0, long_n = 0;
    for (const auto& [ts, mid] : mids) {
        if (ts > now - long_window_ns) {
            long_sum += mid;
            ++long_n;
        }
        if (ts > now - short_window_ns) {
            short_sum += mid;
            ++short_n;
        }
    }
    if (short_n == 0 || long_n == 0) return 0;
    const double signal = short_sum / short_n - long_sum / long_n;
    if (signal > threshold_ticks) return 1;
    if (signal < -threshold_ticks) return -1;
    return 0;
}

void MomentumAgent::start(Kernel& kernel, SimTime session_end) {
    session_end_ = session_end;
    const SimTime phase = rng_.uniform_int(0, config_->momentum_wake_ns - 1);
    kernel.wakeup(id(), config_->warmup_ns + phase);
}

void MomentumAgent::on_event(Kernel& kernel, const Event& event) {
    if (std::get_if<WakeupMsg>(&event.payload) != nullptr) {
        kernel.send(id(), home_venue_, SnapshotReqMsg{id()});
        const SimTime next = kernel.now() + config_->momentum_wake_ns;
        if (next <= session_end_) kernel.wakeup(id(), next);
    } else if (const auto* reply = std::get_if<SnapshotReplyMsg>(&event.payload)) {
        const auto mid = reply->snap.mid();
        if (!mid.has_value()) return;
        mids_.emplace_back(kernel.now(), *mid);
        while (!mids_.empty() && mids_.front().first <= kernel.now() - config_->momentum_long_window_ns)
            mids_.pop_front();
        const int sig = momentum_signal(mids_, kernel.now(), config_->momentum_short_window_ns,
                                        config_->momentum_long_window_ns,
                                        config_->momentum_threshold_ticks);
        if (sig == 0) return;
        Order o;
        o.order_id = (static_cast<OrderId>(id()) + 1) << 40 | ++local_seq_;
        o.trader_id = id();
        o.side = sig > 0 ? Side::Buy : Side::Sell;
        o.qty = rng_.uniform_int(config_->momentum_min_size, config_->momentum_max_size);
        o.is_market = true;
        kernel.send(id(), home_venue_, NewOrderMsg{o});
    }
}

// ---------------------------------------------------------------------------
// Value traders
// ---------------------------------------------------------------------------

int value_signal(double mid, double fundamental_estimate, Ticks band) {
    if (mid < fundamental_estimate - static_cast<double>(band)) return 1;
    if (mid > fundamental_estimate + static_cast<double>(band)) return -1;
    return 0;
}

void ValueAgent::start(Kernel& kernel, SimTime session_end) {
    session_end_ = session_end;
    schedule_next(kernel);
}

void ValueAgent::schedule_next(Kernel& kernel) {
    const double dt_s = rng_.exponential(1.0 / config_->value_wake_mean_s);
    const SimTime next =
        kernel.now() + std::max<SimTime>(1, static_cast<SimTime>(dt_s * static_cast<double>(kNsPerSecond)));
    if (next <= session_end_) kernel.wakeup(id(), next);
}

void ValueAgent::on_event(Kernel& kernel, const Event& event) {
    if (std::get_if<WakeupMsg>(&event.payload) != nullptr) {
        pending_venue_ = static_cast<VenueId>(rng_.uniform_int(0, venue_count_ - 1));
        kernel.send(id(), pending_venue_, SnapshotReqMsg{id()});
        schedule_next(kernel);
    } else if (const auto* reply = std::get_if<SnapshotReplyMsg>(&event.payload)) {
        const auto mid = reply->snap.mid();
        if (!mid.has_value()) return;
        const double estimate = fundamental_->value_at(kernel.now()) +
                                config_->value_obs_noise_ticks * rng_.normal();
        const int sig = value_signal(*mid, estimate, config_->value_band);
        if (sig == 0) return;
        Order o;
        o.order_id = (static_cast<OrderId>(id()) + 1) << 40 | ++local_seq_;
        o.trader_id = id();
        o.qty = rng_.uniform_int(config_->value_min_size, config_->value_max_size);
        if (sig > 0) {
            o.side = Side::Buy;
            o.price_ticks = reply->snap.has_ask ? reply->snap.best_ask : 0;
        } else {
            o.side = Side::Sell;
            o.price_ticks = reply->snap.has_bid ? reply->snap.best_bid : 0;
        }
        if (o.price_ticks < 1) return;
        kernel.send(id(), reply->venue_id, NewOrderMsg{o});
    }
}

// ---------------------------------------------------------------------------
// World assembly
// ---------------------------------------------------------------------------

MarketWorld::MarketWorld(const ScenarioConfig& config, std::uint64_t master_seed)
    : config_(config), master_seed_(master_seed), kernel_(master_seed) {
    kernel_.latency().set_default(config_.latency_ns);
    kernel_.latency().set_jitter(config_.latency_jitter_ns);

    const std::int64_t venues = config_.venues;
    captures_.resize(config_.horizon_steps, venues);
    fundamental_ = std::make_unique<FundamentalPath>(config_.fundamental, master_seed,
                                                     config_.fundamental_grid_ns);

    // Registration order is part of the scenario contract: agent ids seed the
    // per-agent random streams, so background behavior per seed is identical
    // no matter which execution strategy runs on top.
    for (VenueId v = 0; v < venues; ++v) {
        exchanges_.push_back(
            std::make_unique<ExchangeAgent>(v, config_.decision_interval_ns, &captures_));
        kernel_.register_agent(exchanges_.back().get());
    }
    exec_agent_ = std::make_unique<NullAgent>();
    exec_agent_id_ = kernel_.register_agent(exec_agent_.get());

    const SimTime session_end = config_.session_end_ns();

    for (std::int64_t i = 0; i < config_.n_market_makers; ++i) {
        const VenueId venue = static_cast<VenueId>(i % venues);
        market_makers_.push_back(
            std::make_unique<MarketMakerAgent>(config_, venue, exchange_agent_id(venue),
                                               fundamental_.get()));
        const AgentId id = kernel_.register_agent(market_makers_.back().get());
        exchanges_[static_cast<std::size_t>(venue)]->subscribe_reports(id);
    }
    for (std::int64_t i = 0; i < config_.n_noise; ++i) {
        noise_.push_back(std::make_unique<NoiseAgent>(config_, master_seed, 0, venues));
        kernel_.register_agent(noise_.back().get());
    }
    for (std::int64_t i = 0; i < config_.n_momentum; ++i) {
        momentum_.push_back(std::make_unique<MomentumAgent>(
            config_, master_seed, 0, static_cast<VenueId>(i % venues)));
        kernel_.register_agent(momentum_.back().get());
    }
    for (std::int64_t i = 0; i < config_.n_value; ++i) {
        value_.push_back(
            std::make_unique<ValueAgent>(config_, master_seed, 0, fundamental_.get(), venues));
        kernel_.register_agent(value_.back().get());
    }

    // Streams are tagged by final agent id; rebuild them now that ids exist.
    for (auto& mm : market_makers_) (void)mm;
    for (auto& agent : noise_) agent->reseed(master_seed);
    for (auto& agent : momentum_) agent->reseed(master_seed);
    for (auto& agent : value_) agent->reseed(master_seed);

    for (auto& mm : market_makers_) mm->start(kernel_, 0, session_end);
    for (auto& agent : noise_) agent->start(kernel_, session_end);
    for (auto& agent : momentum_) agent->start(kernel_, session_end);
    for (auto& agent : value_) agent->start(kernel_, session_end);
}

void MarketWorld::schedule_captures() {
    for (std::int64_t step = 0; step < config_.horizon_steps; ++step) {
        const SimTime when =
            std::max<SimTime>(0, config_.warmup_ns + step * config_.decision_interval_ns -
                                     config_.latency_ns);
        for (VenueId v = 0; v < config_.venues; ++v) {
            kernel_.schedule(when, exchange_agent_id(v), CaptureMsg{step});
        }
    }
}

std::string MarketWorld::fill_digest() const {
    Sha256 h;
    for (const auto& ex : exchanges_) {
        for (const Fill& f : ex->book().fills()) {
            std::int64_t fields[6] = {f.ts, f.venue_id, static_cast<std::int64_t>(f.maker_order_id),
                                      static_cast<std::int64_t>(f.taker_order_id), f.price_ticks,
                                      f.qty};
            h.update(fields, sizeof(fields));
        }
    }
    return to_hex(h.finish());
}

Shares MarketWorld::total_volume_between(SimTime from, SimTime to) const {
    Shares total = 0;
    for (const auto& ex : exchanges_) total += ex->book().volume_between(from, to);
    return total;
}

} // namespace exsim
