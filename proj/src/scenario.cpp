#include "exsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace exsim {

std::string shield_mode_str(ShieldMode m) {
    switch (m) {
        case ShieldMode::Project: return "project";
        case ShieldMode::CheckOnly: return "check";
        case ShieldMode::Off: return "off";
    }
    return "?";
}

ShieldMode shield_mode_from_str(const std::string& s) {
    if (s == "project") return ShieldMode::Project;
    if (s == "check") return ShieldMode::CheckOnly;
    if (s == "off") return ShieldMode::Off;
    throw std::invalid_argument("ConfigError: unknown shield mode: " + s);
}

std::string strategy_str(StrategyKind s) {
    switch (s) {
        case StrategyKind::Twap: return "twap";
        case StrategyKind::Vwap: return "vwap";
        case StrategyKind::Greedy: return "greedy";
        case StrategyKind::RlSafe: return "rl_safe";
        case StrategyKind::RlUnconstrained: return "rl_unconstrained";
    }
    return "?";
}

StrategyKind strategy_from_str(const std::string& s) {
    if (s == "twap") return StrategyKind::Twap;
    if (s == "vwap") return StrategyKind::Vwap;
    if (s == "greedy") return StrategyKind::Greedy;
    if (s == "rl_safe") return StrategyKind::RlSafe;
    if (s == "rl_unconstrained") return StrategyKind::RlUnconstrained;
    throw std::invalid_argument("ConfigError: unknown strategy: " + s);
}

ShieldMode default_mode_for(StrategyKind s) {
    switch (s) {
        case StrategyKind::Twap:
        case StrategyKind::Vwap:
        case StrategyKind::RlSafe: return ShieldMode::Project;
        case StrategyKind::RlUnconstrained: return ShieldMode::CheckOnly;
        case StrategyKind::Greedy: return ShieldMode::Off;
    }
    return ShieldMode::Project;
}

std::vector<double> ScenarioConfig::effective_venue_weights() const {
    if (!venue_weights.empty()) {
        if (static_cast<std::int64_t>(venue_weights.size()) != venues)
            throw std::invalid_argument("ConfigError: venue_weights length differs from venues");
        double sum = 0.0;
        for (double w : venue_weights) {
            if (w < 0.0) throw std::invalid_argument("ConfigError: venue weight < 0");
            sum += w;
        }
        if (sum <= 0.0) throw std::invalid_argument("ConfigError: venue weights sum to 0");
        std::vector<double> out = venue_weights;
        for (double& w : out) w /= sum;
        return out;
    }
    return std::vector<double>(static_cast<std::size_t>(venues),
                               1.0 / static_cast<double>(venues));
}

ScenarioConfig apply_stress(const ScenarioConfig& base, StressVariant variant,
                            std::int64_t toggle_off_step) {
    ScenarioConfig out = base;
    switch (variant) {
        case StressVariant::Latency500ms:
            out.latency_ns = millis_ns(500);
            break;
        case StressVariant::LiquidityHalf:
            out.n_market_makers = base.n_market_makers / 2;
            out.n_noise = base.n_noise / 2;
            break;
        case StressVariant::ShieldToggle:
            out.shield_toggle_off_step = toggle_off_step;
            break;
    }
    return out;
}

namespace {

struct KeySpec {
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, const std::string&)> set;
};

std::int64_t to_i64(const std::string& v) {
    std::size_t pos = 0;
    const std::int64_t out = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("ConfigError: bad integer: " + v);
    return out;
}

double to_f64(const std::string& v) {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("ConfigError: bad number: " + v);
    return out;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::invalid_argument("ConfigError: bad bool: " + v);
}

std::string fmt_f(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

#define INT_KEY(section, name, field)                                                     \
    {                                                                                     \
        section "." name, KeySpec {                                                       \
            [](const ScenarioConfig& c) { return std::to_string(c.field); },              \
                [](ScenarioConfig& c, const std::string& v) { c.field = to_i64(v); }      \
        }                                                                                 \
    }

#define F64_KEY(section, name, field)                                                     \
    {                                                                                     \
        section "." name, KeySpec {                                                       \
            [](const ScenarioConfig& c) { return fmt_f(c.field); },                       \
                [](ScenarioConfig& c, const std::string& v) { c.field = to_f64(v); }      \
        }                                                                                 \
    }

#define BOOL_KEY(section, name, field)                                                    \
    {                                                                                     \
        section "." name, KeySpec {                                                       \
            [](const ScenarioConfig& c) { return c.field ? "true" : "false"; },           \
                [](ScenarioConfig& c, const std::string& v) { c.field = to_bool(v); }     \
        }                                                                                 \
    }

const std::map<std::string, KeySpec>& key_table() {
    static const std::map<std::string, KeySpec> table = {
        INT_KEY("kernel", "latency_ns", latency_ns),
        INT_KEY("kernel", "latency_jitter_ns", latency_jitter_ns),
        INT_KEY("kernel", "warmup_ns", warmup_ns),
        F64_KEY("fundamental", "kappa", fundamental.kappa),
        F64_KEY("fundamental", "mu", fundamental.mu),
        F64_KEY("fundamental", "sigma", fundamental.sigma),
        F64_KEY("fundamental", "x0", fundamental.x0),
        INT_KEY("fundamental", "grid_ns", fundamental_grid_ns),
        INT_KEY("population", "market_makers", n_market_makers),
        INT_KEY("population", "noise", n_noise),
        INT_KEY("population", "momentum", n_momentum),
        INT_KEY("population", "value", n_value),
        INT_KEY("mm", "requote_ns", mm_requote_ns),
        INT_KEY("mm", "half_spread", mm_half_spread),
        F64_KEY("mm", "skew_per_share", mm_skew_per_share),
        INT_KEY("mm", "quote_size", mm_quote_size),
        F64_KEY("noise", "daily_shares", noise_daily_shares),
        F64_KEY("noise", "market_prob", noise_market_prob),
        INT_KEY("noise", "limit_band", noise_limit_band),
        INT_KEY("noise", "min_size", noise_min_size),
        INT_KEY("noise", "max_size", noise_max_size),
        F64_KEY("noise", "u_base", noise_u_base),
        F64_KEY("noise", "u_amp", noise_u_amp),
        INT_KEY("momentum", "wake_ns", momentum_wake_ns),
        INT_KEY("momentum", "short_window_ns", momentum_short_window_ns),
        INT_KEY("momentum", "long_window_ns", momentum_long_window_ns),
        F64_KEY("momentum", "threshold_ticks", momentum_threshold_ticks),
        INT_KEY("momentum", "min_size", momentum_min_size),
        INT_KEY("momentum", "max_size", momentum_max_size),
        F64_KEY("value", "wake_mean_s", value_wake_mean_s),
        F64_KEY("value", "obs_noise_ticks", value_obs_noise_ticks),
        INT_KEY("value", "band", value_band),
        INT_KEY("value", "min_size", value_min_size),
        INT_KEY("value", "max_size", value_max_size),
        INT_KEY("execution", "venues", venues),
        INT_KEY("execution", "parent_qty", parent_qty),
        INT_KEY("execution", "horizon_steps", horizon_steps),
        INT_KEY("execution", "decision_interval_ns", decision_interval_ns),
        INT_KEY("execution", "vhat_prior", vhat_prior),
        INT_KEY("shield", "alpha_ppm", alpha_ppm),
        INT_KEY("shield", "beta_ppm", beta_ppm),
        BOOL_KEY("shield", "self_trade_guard", self_trade_guard),
        INT_KEY("shield", "toggle_off_step", shield_toggle_off_step),
        F64_KEY("reward", "time_penalty_per_step", time_penalty_per_step),
        F64_KEY("reward", "violation_penalty_per_unit", violation_penalty_per_unit),
        F64_KEY("reward", "terminal_penalty_per_share", terminal_penalty_per_share),
        F64_KEY("reward", "self_trade_terminal_penalty", self_trade_terminal_penalty),
        INT_KEY("strategy", "greedy_depth_ticks", greedy_depth_ticks),
    };
    return table;
}

#undef INT_KEY
#undef F64_KEY
#undef BOOL_KEY

std::string weights_to_str(const std::vector<double>& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) os << ' ';
        os << fmt_f(w[i]);
    }
    return os.str();
}

} // namespace

std::string serialize_config(const ScenarioConfig& config) {
    std::ostringstream os;
    std::string current_section;
    for (const auto& [full_key, spec] : key_table()) {
        const auto dot = full_key.find('.');
        const std::string section = full_key.substr(0, dot);
        const std::string key = full_key.substr(dot + 1);
        if (section != current_section) {
            if (!current_section.empty()) os << "\n";
            os << "[" << section << "]\n";
            current_section = section;
        }
        os << key << " = " << spec.get(config) << "\n";
        if (full_key == "execution.venues" && !config.venue_weights.empty()) {
            os << "venue_weights = " << weights_to_str(config.venue_weights) << "\n";
        }
    }
    return os.str();
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("ConfigError: bad section header at line " +
                                            std::to_string(line_no));
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("ConfigError: expected key = value at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "execution" && key == "venue_weights") {
            std::istringstream ws(value);
            std::vector<double> weights;
            double w;
            while (ws >> w) weights.push_back(w);
            config.venue_weights = weights;
            continue;
        }
        const std::string full_key = section + "." + key;
        auto it = key_table().find(full_key);
        if (it == key_table().end())
            throw std::invalid_argument("ConfigError: unknown key '" + full_key + "' at line " +
                                        std::to_string(line_no));
        it->second.set(config, value);
    }
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("ConfigError: cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

} // namespace exsim
