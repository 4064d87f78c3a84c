/// @file engine.hpp
/// Interval computation: band classification, policy selection, and the
/// linear/exponential growth curves with fallback and cap.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egen/ast.hpp"

namespace egen {

inline constexpr std::int64_t kDefaultFallbackMs = 5000;
inline constexpr std::int64_t kDefaultCapMs = 60000;

/// Thresholds assumed when a model has no policies to read them from.
inline constexpr std::int32_t kDefaultThresholdHigh = 80;
inline constexpr std::int32_t kDefaultThresholdMedium = 50;

enum class Band { High, Medium, Low };

const char* band_name(Band b);

struct DeviceContext {
    int battery_percent = 100; // whole percent, 0..=100
    bool charging = false;
    bool foreground = true;
};

struct IntervalDecision {
    std::int64_t interval_ms = 0;
    std::optional<std::int32_t> matched_policy_id; // empty when fallback used
    Band band = Band::High;
    int drops_in_band = 0;
};

/// High when percent >= high threshold, Medium when medium <= percent <
/// high, Low otherwise. Requires medium < high.
Band classify_band(int battery_percent, int threshold_high, int threshold_medium);

/// (threshold_high, threshold_medium) read from the first policy, or the
/// built-in defaults for an empty model. Models that pass validation have
/// one consistent pair, so "first" is not arbitrary in practice.
std::pair<std::int32_t, std::int32_t> model_thresholds(const PolicyModel& model);

/// First policy in declaration order whose (BatteryState, BatteryLevel,
/// AppState) triple matches the context, or nullptr.
const AdaptationPolicy* select_policy(const PolicyModel& model, const DeviceContext& ctx);

/// Full decision for one context. Linear: base + factor * drops.
/// Exponential: round-half-up of base * (1 + factor/100)^drops, evaluated
/// in exact integer arithmetic. The cap applies to every result including
/// the fallback.
IntervalDecision compute_interval(const PolicyModel& model,
                                  const DeviceContext& ctx,
                                  std::int64_t fallback_ms = kDefaultFallbackMs,
                                  std::int64_t cap_ms = kDefaultCapMs);

/// The two growth curves before capping, exposed so callers can sweep the
/// drop count directly. Exponential evaluates exactly and rounds half-up,
/// saturating to int64 max on overflow.
std::int64_t linear_interval_ms(std::int64_t base_ms, std::int64_t factor, int drops);
std::int64_t exponential_interval_ms(std::int64_t base_ms, std::int64_t factor, int drops);

struct IntervalRow {
    int percent = 0;
    std::int64_t interval_ms = 0;
};

/// 101 rows, percent 100 down to 0, for a fixed charging/foreground slice.
std::vector<IntervalRow> interval_table(const PolicyModel& model,
                                        bool charging,
                                        bool foreground,
                                        std::int64_t fallback_ms = kDefaultFallbackMs,
                                        std::int64_t cap_ms = kDefaultCapMs);

/// CSV body `percent,interval_ms\n` per row, no header.
std::string interval_table_csv(const std::vector<IntervalRow>& rows);

/// JSON array of {"percent": p, "interval_ms": v} objects, row order kept.
std::string interval_table_json(const std::vector<IntervalRow>& rows);

} // namespace egen
