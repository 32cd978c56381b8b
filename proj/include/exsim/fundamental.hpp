#pragma once

#include "exsim/rng.hpp"
#include "exsim/types.hpp"

#include <cmath>
#include <vector>

namespace exsim {

/// Ornstein-Uhlenbeck parameters for the shared asset fundamental.
/// kappa in 1/s, mu and x0 in ticks, sigma in ticks/sqrt(s).
struct FundamentalOU {
    double kappa = 1.0e-3;
    double mu = 10'000.0;
    double sigma = 0.3;
    double x0 = 10'000.0;
};

/// One Euler step of the mean-reversion process.
inline double ou_step(double x, double dt, const FundamentalOU& params, RngStream& rng) {
    const double eps = params.sigma > 0.0 ? rng.normal() : 0.0;
    return x + params.kappa * (params.mu - x) * dt + params.sigma * std::sqrt(dt) * eps;
}

/// Lazily extended fundamental path sampled on a fixed grid. Both venues and
/// all agents read the same path, so the value at a given time never depends
/// on who asked first.
class FundamentalPath {
public:
    FundamentalPath(const FundamentalOU& params, std::uint64_t master_seed,
                    SimTime grid_step_ns = kNsPerSecond)
        : params_(params), grid_step_ns_(grid_step_ns),
          rng_(master_seed, stream_tag::kFundamental) {
        values_.push_back(params_.x0);
    }

    /// Real-valued fundamental at the grid point at or before t.
    double value_at(SimTime t) {
        const std::int64_t idx = t <= 0 ? 0 : t / grid_step_ns_;
        extend_to(idx);
        return values_[static_cast<std::size_t>(idx)];
    }

    /// Fundamental rounded to the nearest tick for quoting.
    Ticks ticks_at(SimTime t) { return static_cast<Ticks>(std::llround(value_at(t))); }

    const FundamentalOU& params() const { return params_; }

private:
    void extend_to(std::int64_t idx) {
        const double dt = static_cast<double>(grid_step_ns_) / static_cast<double>(kNsPerSecond);
        while (static_cast<std::int64_t>(values_.size()) <= idx) {
            values_.push_back(ou_step(values_.back(), dt, params_, rng_));
        }
    }

    FundamentalOU params_;
    SimTime grid_step_ns_;
    RngStream rng_;
    std::vector<double> values_;
};

} // namespace exsim
