/// Deterministic random policy models for round-trip and engine property
/// tests. Uses raw mt19937_64 draws with modulo so the stream is identical
/// on every platform.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "egen/ast.hpp"

namespace testsupport {

class ModelGen {
public:
    explicit ModelGen(std::uint64_t seed) : rng_(seed) {}

    /// Structurally valid model with 0..6 policies, shuffled binding order,
    /// values anywhere in their lexical ranges (semantic rules like V003
    /// may well be violated; round-tripping does not care).
    egen::PolicyModel next_model() {
        egen::PolicyModel model;
        std::size_t count = pick(7);
        for (std::size_t i = 0; i < count; ++i)
            model.policies.push_back(next_policy(static_cast<std::int32_t>(pick(10000))));
        return model;
    }

    /// Valid-by-construction model: consistent thresholds, distinct ids and
    /// context triples, positive intervals. Passes the validator with no
    /// errors, so it also suits engine property tests.
    egen::PolicyModel next_clean_model() {
        egen::PolicyModel model;
        std::int32_t tm = static_cast<std::int32_t>(1 + pick(97));       // 1..97
        std::int32_t th = tm + 1 + static_cast<std::int32_t>(pick(98 - tm)); // tm+1..98
        std::size_t count = 1 + pick(6);
        for (std::size_t i = 0; i < count; ++i) {
            egen::AdaptationPolicy p = next_policy(static_cast<std::int32_t>(i + 1));
            p.condition.threshold_high = th;
            p.condition.threshold_medium = tm;
            // enumerate distinct triples: 2 states x 3 levels x 2 appstates
            std::size_t t = i % 12;
            p.condition.battery_state =
                t < 6 ? egen::BatteryState::Discharging : egen::BatteryState::Charging;
            p.condition.battery_level = t % 3 == 0   ? egen::BatteryLevel::High
                                        : t % 3 == 1 ? egen::BatteryLevel::Medium
                                                     : egen::BatteryLevel::Low;
            p.condition.app_state =
                (t / 3) % 2 == 0 ? egen::AppState::Foreground : egen::AppState::Background;
            if (p.adaptation.sensing_interval_ms == 0) p.adaptation.sensing_interval_ms = 1;
            model.policies.push_back(std::move(p));
        }
        return model;
    }

    egen::AdaptationPolicy next_policy(std::int32_t id_value) {
        egen::AdaptationPolicy p;
        p.id.value = id_value;
        p.id.raw = std::string(pick(3), '0') + std::to_string(id_value);

        p.condition.battery_state =
            pick(2) == 0 ? egen::BatteryState::Charging : egen::BatteryState::Discharging;
        p.condition.battery_level = pick(3) == 0   ? egen::BatteryLevel::High
                                    : pick(2) == 0 ? egen::BatteryLevel::Medium
                                                   : egen::BatteryLevel::Low;
        p.condition.threshold_high = static_cast<std::int32_t>(pick(200)); // may be invalid
        p.condition.threshold_medium = static_cast<std::int32_t>(pick(200));
        p.condition.app_state =
            pick(2) == 0 ? egen::AppState::Foreground : egen::AppState::Background;
        p.condition.entries = shuffled_context_entries();

        p.adaptation.sensing_interval_ms = static_cast<std::int32_t>(pick(100000));
        p.adaptation.decreasing_factor = static_cast<std::int32_t>(pick(1000));
        p.adaptation.function = pick(2) == 0 ? egen::BatteryAwareFunction::Linear
                                             : egen::BatteryAwareFunction::Exponential;
        p.adaptation.entries = shuffled_feature_entries();
        return p;
    }

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

private:
    std::vector<egen::ContextEntry> shuffled_context_entries() {
        egen::ContextKey keys[5] = {egen::ContextKey::BatteryState, egen::ContextKey::BatteryLevel,
                                    egen::ContextKey::ThresholdHigh,
                                    egen::ContextKey::ThresholdMedium, egen::ContextKey::AppState};
        for (std::size_t i = 4; i > 0; --i) std::swap(keys[i], keys[pick(i + 1)]);
        std::vector<egen::ContextEntry> out;
        for (egen::ContextKey k : keys) out.push_back({k, {}});
        return out;
    }

    std::vector<egen::FeatureEntry> shuffled_feature_entries() {
        egen::FeatureKey keys[3] = {egen::FeatureKey::SensingInterval,
                                    egen::FeatureKey::DecreasingFactor,
                                    egen::FeatureKey::BatteryAwareFunction};
        for (std::size_t i = 2; i > 0; --i) std::swap(keys[i], keys[pick(i + 1)]);
        std::vector<egen::FeatureEntry> out;
        for (egen::FeatureKey k : keys) out.push_back({k, {}});
        return out;
    }

    std::mt19937_64 rng_;
};

} // namespace testsupport
