#pragma once

#include "exsim/fundamental.hpp"
#include "exsim/kernel.hpp"
#include "exsim/order_book.hpp"
#include "exsim/rng.hpp"
#include "exsim/scenario.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace exsim {

/// Exchange-side state capture for one (step, venue); the execution
/// environment reads these instead of peeking at live books, so the agent
/// only ever acts on data that is at least one network delay old.
struct StepCapture {
    bool present = false;
    BookSnapshot snap;
};

class CaptureSink {
public:
    void resize(std::int64_t steps, std::int64_t venues) {
        captures_.assign(static_cast<std::size_t>(steps * venues), StepCapture{});
        venues_ = venues;
    }
    void store(std::int64_t step, VenueId venue, const BookSnapshot& snap) {
        auto& slot = captures_.at(static_cast<std::size_t>(step * venues_ + venue));
        slot.present = true;
        slot.snap = snap;
    }
    const StepCapture& get(std::int64_t step, VenueId venue) const {
        return captures_.at(static_cast<std::size_t>(step * venues_ + venue));
    }

private:
    std::vector<StepCapture> captures_;
    std::int64_t venues_ = 0;
};

// ---------------------------------------------------------------------------
// Exchange
// ---------------------------------------------------------------------------

class ExchangeAgent final : public Agent {
public:
    ExchangeAgent(VenueId venue, SimTime interval_ns, CaptureSink* sink)
        : venue_(venue), interval_ns_(interval_ns), sink_(sink), book_(venue) {}

    void on_event(Kernel& kernel, const Event& event) override;

    OrderBook& book() { return book_; }
    const OrderBook& book() const { return book_; }
    VenueId venue() const { return venue_; }

    /// Agents that want execution reports for their fills (market makers).
    void subscribe_reports(AgentId agent) { report_subscribers_.insert(agent); }

private:
    void process_order(Kernel& kernel, Order order);

    VenueId venue_;
    SimTime interval_ns_;
    CaptureSink* sink_;
    OrderBook book_;
    std::unordered_set<AgentId> report_subscribers_;
};

// ---------------------------------------------------------------------------
// Background agents
// ---------------------------------------------------------------------------

/// Pure quote rule: symmetric around the fundamental, both sides shifted down
/// by skew * inventory so a long book leans into selling pressure.
struct MmQuotes {
    Ticks bid = 0;
    Ticks ask = 0;
};

MmQuotes market_maker_quotes(double fundamental_ticks, Ticks half_spread, double skew_per_share,
                             Shares inventory);

class MarketMakerAgent final : public Agent {
public:
    MarketMakerAgent(const ScenarioConfig& config, VenueId venue, AgentId venue_agent,
                     FundamentalPath* fundamental)
        : config_(&config), venue_(venue), venue_agent_(venue_agent), fundamental_(fundamental) {}

    void start(Kernel& kernel, SimTime first_wake, SimTime session_end);
    void on_event(Kernel& kernel, const Event& event) override;

    Shares inventory() const { return inventory_; }

private:
    const ScenarioConfig* config_;
    VenueId venue_;
    AgentId venue_agent_;
    FundamentalPath* fundamental_;
    SimTime session_end_ = 0;
    Shares inventory_ = 0;
    std::uint64_t local_seq_ = 0;
    OrderId live_bid_ = 0;
    OrderId live_ask_ = 0;
    std::unordered_map<OrderId, Side> my_orders_;
};

/// Decision of a noise trader wake, before price resolution.
struct NoiseIntent {
    Side side = Side::Buy;
    bool is_market = false;
    Shares qty = 0;
    Ticks limit_offset = 0; // ticks behind the touch for limit orders
};

NoiseIntent noise_intent(const ScenarioConfig& config, RngStream& rng);

class NoiseAgent final : public Agent {
public:
    NoiseAgent(const ScenarioConfig& config, std::uint64_t master_seed, std::uint64_t stream_tag,
               std::int64_t venue_count)
        : config_(&config), rng_(master_seed, stream_tag), venue_count_(venue_count) {}

    void start(Kernel& kernel, SimTime session_end);
    void on_event(Kernel& kernel, const Event& event) override;

    /// Intensity profile over the session, normalized to mean one.
    static double u_profile(const ScenarioConfig& config, SimTime t);

private:
    void schedule_next(Kernel& kernel);

    const ScenarioConfig* config_;
    RngStream rng_;
    std::int64_t venue_count_;
    SimTime session_end_ = 0;
    double rate_max_per_ns_ = 0.0;
    std::uint64_t local_seq_ = 0;
    std::optional<NoiseIntent> pending_; // limit order waiting for a snapshot
    VenueId pending_venue_ = 0;
};

/// Moving-average crossover signal on sampled midprices; +1 buy, -1 sell, 0 none.
int momentum_signal(const std::deque<std::pair<SimTime, double>>& mids, SimTime now,
                    SimTime short_window_ns, SimTime long_window_ns, double threshold_ticks);

class MomentumAgent final : public Agent {
public:
    MomentumAgent(const ScenarioConfig& config, std::uint64_t master_seed, std::uint64_t stream_tag,
                  VenueId home_venue)
        : config_(&config), rng_(master_seed, stream_tag), home_venue_(home_venue) {}

    void start(Kernel& kernel, SimTime session_end);
    void on_event(Kernel& kernel, const Event& event) override;

private:
    const ScenarioConfig* config_;
    RngStream rng_;
    VenueId home_venue_;
    SimTime session_end_ = 0;
    std::uint64_t local_seq_ = 0;
    std::deque<std::pair<SimTime, double>> mids_;
};

/// Band rule around a noisy fundamental estimate; +1 buy, -1 sell, 0 none.
int value_signal(double mid, double fundamental_estimate, Ticks band);

class ValueAgent final : public Agent {
public:
    ValueAgent(const ScenarioConfig& config, std::uint64_t master_seed, std::uint64_t stream_tag,
               FundamentalPath* fundamental, std::int64_t venue_count)
        : config_(&config), rng_(master_seed, stream_tag), fundamental_(fundamental),
          venue_count_(venue_count) {}

    void start(Kernel& kernel, SimTime session_end);
    void on_event(Kernel& kernel, const Event& event) override;

private:
    void schedule_next(Kernel& kernel);

    const ScenarioConfig* config_;
    RngStream rng_;
    FundamentalPath* fundamental_;
    std::int64_t venue_count_;
    SimTime session_end_ = 0;
    std::uint64_t local_seq_ = 0;
    VenueId pending_venue_ = 0;
};

/// Inert agent owning the execution trader id; the environment drives all of
/// its traffic directly through the kernel.
class NullAgent final : public Agent {
public:
    void on_event(Kernel&, const Event&) override {}
};

// ---------------------------------------------------------------------------
// World assembly
// ---------------------------------------------------------------------------

/// One simulated trading day: kernel, venues, fundamental and the background
/// population, deterministically seeded. Agent ids are assigned in a fixed
/// order so the background event streams per seed do not depend on which
/// execution strategy (if any) is plugged in.
class MarketWorld {
public:
    MarketWorld(const ScenarioConfig& config, std::uint64_t master_seed);

    Kernel& kernel() { return kernel_; }
    ExchangeAgent& exchange(VenueId venue) { return *exchanges_[static_cast<std::size_t>(venue)]; }
    const ExchangeAgent& exchange(VenueId venue) const {
        return *exchanges_[static_cast<std::size_t>(venue)];
    }
    CaptureSink& captures() { return captures_; }
    FundamentalPath& fundamental() { return *fundamental_; }
    AgentId exec_agent_id() const { return exec_agent_id_; }
    AgentId exchange_agent_id(VenueId venue) const { return static_cast<AgentId>(venue); }
    const ScenarioConfig& config() const { return config_; }
    std::uint64_t master_seed() const { return master_seed_; }

    /// Schedules exchange-side captures for every decision step.
    void schedule_captures();

    /// Digest over all fills on all venues; background-only runs with the
    /// same seed must agree on this regardless of configured strategy.
    std::string fill_digest() const;

    Shares total_volume_between(SimTime from, SimTime to) const;

private:
    ScenarioConfig config_;
    std::uint64_t master_seed_;
    Kernel kernel_;
    CaptureSink captures_;
    std::unique_ptr<FundamentalPath> fundamental_;
    std::vector<std::unique_ptr<ExchangeAgent>> exchanges_;
    std::unique_ptr<NullAgent> exec_agent_;
    AgentId exec_agent_id_ = -1;
    std::vector<std::unique_ptr<MarketMakerAgent>> market_makers_;
    std::vector<std::unique_ptr<NoiseAgent>> noise_;
    std::vector<std::unique_ptr<MomentumAgent>> momentum_;
    std::vector<std::unique_ptr<ValueAgent>> value_;
};

} // namespace exsim
