#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace exsim {

/// Simulation time in integer nanoseconds since session open.
/// Integer time keeps event ordering and transcripts bit-exact.
using SimTime = std::int64_t;

using AgentId = std::int32_t;
using VenueId = std::int32_t;
using OrderId = std::uint64_t;

/// Prices are integer ticks (tick = $0.01). Quantities are integer shares.
using Ticks = std::int64_t;
using Shares = std::int64_t;

inline constexpr double kTickValueDollars = 0.01;
inline constexpr SimTime kNsPerSecond = 1'000'000'000;
inline constexpr SimTime kNsPerMillisecond = 1'000'000;

constexpr SimTime seconds_ns(std::int64_t s) { return s * kNsPerSecond; }
constexpr SimTime millis_ns(std::int64_t ms) { return ms * kNsPerMillisecond; }

enum class Side : std::uint8_t { Buy = 0, Sell = 1 };

inline Side opposite(Side s) { return s == Side::Buy ? Side::Sell : Side::Buy; }
inline const char* side_str(Side s) { return s == Side::Buy ? "buy" : "sell"; }

/// Fractions that feed exact integer arithmetic (participation cap, price
/// collar) are stored in parts-per-million. 1.0 == 1'000'000 ppm.
using Ppm = std::int64_t;
inline constexpr Ppm kPpmOne = 1'000'000;

inline Ppm ppm_from_double(double f) {
    if (!(f >= 0.0) || f > 1.0) throw std::invalid_argument("ppm fraction out of [0,1]: " + std::to_string(f));
    return static_cast<Ppm>(f * static_cast<double>(kPpmOne) + 0.5);
}

inline double ppm_to_double(Ppm p) { return static_cast<double>(p) / static_cast<double>(kPpmOne); }

/// floor(value * ppm / 1e6) for non-negative value.
inline std::int64_t mul_ppm_floor(std::int64_t value, Ppm ppm) {
    return (value * ppm) / kPpmOne;
}

/// ceil(value * ppm / 1e6) for non-negative value.
inline std::int64_t mul_ppm_ceil(std::int64_t value, Ppm ppm) {
    return (value * ppm + kPpmOne - 1) / kPpmOne;
}

} // namespace exsim
