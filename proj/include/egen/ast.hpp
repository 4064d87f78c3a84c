/// @file ast.hpp
/// Policy model types plus the pretty-printer and semantic comparison.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egen/diagnostics.hpp"

namespace egen {

enum class BatteryState { Charging, Discharging };
enum class BatteryLevel { High, Medium, Low };
enum class AppState { Foreground, Background };
enum class BatteryAwareFunction { Linear, Exponential };

enum class ContextKey {
    BatteryState,
    BatteryLevel,
    ThresholdHigh,
    ThresholdMedium,
    AppState,
};

enum class FeatureKey {
    SensingInterval,
    DecreasingFactor,
    BatteryAwareFunction,
};

const char* keyword(BatteryState v);
const char* keyword(BatteryLevel v);
const char* keyword(AppState v);
const char* keyword(BatteryAwareFunction v);
const char* keyword(ContextKey k);
const char* keyword(FeatureKey k);

/// One `Key = value` binding as written, in source order. Values live in the
/// typed block fields; entries exist so duplicate bindings and the original
/// ordering survive parsing.
struct ContextEntry {
    ContextKey key;
    Span span;
};

struct FeatureEntry {
    FeatureKey key;
    Span span;
};

/// Condition block. Typed fields hold the first occurrence of each binding.
struct ContextBlock {
    BatteryState battery_state = BatteryState::Discharging;
    BatteryLevel battery_level = BatteryLevel::High;
    std::int32_t threshold_high = 0;
    std::int32_t threshold_medium = 0;
    AppState app_state = AppState::Foreground;
    std::vector<ContextEntry> entries;
    Span span;
};

/// Adaptation block. Same first-occurrence convention as ContextBlock.
struct FeatureBlock {
    std::int32_t sensing_interval_ms = 0;
    std::int32_t decreasing_factor = 0;
    BatteryAwareFunction function = BatteryAwareFunction::Linear;
    std::vector<FeatureEntry> entries;
    Span span;
};

/// Policy id keeps the raw lexeme so `01` round-trips unchanged.
struct PolicyId {
    std::int32_t value = 0;
    std::string raw;
    Span span;
};

struct AdaptationPolicy {
    PolicyId id;
    ContextBlock condition;
    FeatureBlock adaptation;
    Span span;
};

struct PolicyModel {
    std::vector<AdaptationPolicy> policies;
    std::string source_name;
};

/// Canonical text form: 4-space indents, one binding per line, `AND` on all
/// but the last binding of a block, policies separated by a blank line.
/// Binding order follows the entries vectors. An empty model prints as "".
std::string pretty_print(const PolicyModel& model);

/// Field-by-field comparison ignoring spans, raw id lexemes, and binding
/// order. Policy order does matter (it drives first-match selection).
bool semantic_equals(const PolicyModel& a, const PolicyModel& b);

} // namespace egen
