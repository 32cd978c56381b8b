#pragma once

#include "exsim/fundamental.hpp"
#include "exsim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exsim {

enum class ShieldMode : std::uint8_t {
    Project,   // violations corrected before execution
    CheckOnly, // raw actions execute, violations logged
    Off        // no compliance monitoring at all
};

std::string shield_mode_str(ShieldMode m);
ShieldMode shield_mode_from_str(const std::string& s);

enum class StrategyKind : std::uint8_t { Twap, Vwap, Greedy, RlSafe, RlUnconstrained };

std::string strategy_str(StrategyKind s);
StrategyKind strategy_from_str(const std::string& s);

/// Default shield mode implied by a strategy: baselines self-limit and run
/// projected, the unconstrained agent runs check-only, greedy runs without
/// compliance monitoring (it is a stress reference, excluded from claims).
ShieldMode default_mode_for(StrategyKind s);

/// Every tunable of a run. Two runs from the same config and master seed are
/// byte-identical. Unknown keys in a config file are hard errors.
struct ScenarioConfig {
    // [kernel]
    SimTime latency_ns = millis_ns(50);
    SimTime latency_jitter_ns = 0;
    SimTime warmup_ns = seconds_ns(60);

    // [fundamental]
    FundamentalOU fundamental{};
    SimTime fundamental_grid_ns = kNsPerSecond;

    // [population]
    std::int64_t n_market_makers = 2; // one per venue while count >= venues
    std::int64_t n_noise = 1000;
    std::int64_t n_momentum = 10;
    std::int64_t n_value = 100;

    // [mm]
    SimTime mm_requote_ns = kNsPerSecond;
    Ticks mm_half_spread = 2;
    double mm_skew_per_share = 3.0e-5; // ticks per share of inventory
    Shares mm_quote_size = 500;

    // [noise]
    double noise_daily_shares = 3.0e6; // expected submitted shares across venues
    double noise_market_prob = 0.5;
    Ticks noise_limit_band = 5;
    Shares noise_min_size = 1;
    Shares noise_max_size = 100;
    double noise_u_base = 0.75; // U-profile u(s) = base + amp * (2s/S - 1)^2
    double noise_u_amp = 0.75;

    // [momentum]
    SimTime momentum_wake_ns = seconds_ns(15);
    SimTime momentum_short_window_ns = seconds_ns(60);
    SimTime momentum_long_window_ns = seconds_ns(600);
    double momentum_threshold_ticks = 1.0;
    Shares momentum_min_size = 10;
    Shares momentum_max_size = 100;

    // [value]
    double value_wake_mean_s = 120.0;
    double value_obs_noise_ticks = 5.0;
    Ticks value_band = 10;
    Shares value_min_size = 10;
    Shares value_max_size = 100;

    // [execution]
    std::int64_t venues = 2;
    Shares parent_qty = 100'000; // sell order
    std::int64_t horizon_steps = 390;
    SimTime decision_interval_ns = seconds_ns(60);
    std::vector<double> venue_weights; // empty means equal weights
    Shares vhat_prior = 1'500;         // first-interval volume prior per venue

    // [shield]
    Ppm alpha_ppm = 100'000;
    Ppm beta_ppm = 5'000;
    bool self_trade_guard = true;
    std::int64_t shield_toggle_off_step = -1; // >= 0: projection disabled from this step

    // [reward]
    double time_penalty_per_step = 1.0;      // dollars, scaled by remaining fraction
    double violation_penalty_per_unit = 0.005;
    double terminal_penalty_per_share = 0.001;
    double self_trade_terminal_penalty = 1000.0;

    // [strategy]
    Ticks greedy_depth_ticks = 20;

    SimTime session_length_ns() const { return horizon_steps * decision_interval_ns; }
    SimTime session_end_ns() const { return warmup_ns + session_length_ns(); }
    std::vector<double> effective_venue_weights() const;
};

/// Stress variants from the evaluation protocol. Each overrides exactly the
/// parameters its scenario names.
enum class StressVariant : std::uint8_t { Latency500ms, LiquidityHalf, ShieldToggle };

ScenarioConfig apply_stress(const ScenarioConfig& base, StressVariant variant,
                            std::int64_t toggle_off_step = 195);

std::string serialize_config(const ScenarioConfig& config);
ScenarioConfig parse_config(const std::string& text);     // throws on unknown keys / bad values
ScenarioConfig load_config_file(const std::string& path); // throws on IO errors

} // namespace exsim
