#include "egen/ast.hpp"

#include <sstream>

namespace egen {

const char* keyword(BatteryState v) {
    return v == BatteryState::Charging ? "Charging" : "Discharging";
}

const char* keyword(BatteryLevel v) {
    switch (v) {
    case BatteryLevel::High: return "High";
    case BatteryLevel::Medium: return "Medium";
    default: return "Low";
    }
}

const char* keyword(AppState v) {
    return v == AppState::Foreground ? "Foreground" : "Background";
}

const char* keyword(BatteryAwareFunction v) {
    return v == BatteryAwareFunction::Linear ? "Linear" : "Exponential";
}

const char* keyword(ContextKey k) {
    switch (k) {
    case ContextKey::BatteryState: return "BatteryState";
    case ContextKey::BatteryLevel: return "BatteryLevel";
    case ContextKey::ThresholdHigh: return "Threshold_High";
    case ContextKey::ThresholdMedium: return "Threshold_Medium";
    default: return "AppState";
    }
}

const char* keyword(FeatureKey k) {
    switch (k) {
    case FeatureKey::SensingInterval: return "SensingInterval";
    case FeatureKey::DecreasingFactor: return "Decreasing_Factor";
    default: return "BatteryAwareFunction";
    }
}

namespace {

std::string context_value(const ContextBlock& c, ContextKey k) {
    switch (k) {
    case ContextKey::BatteryState: return keyword(c.battery_state);
    case ContextKey::BatteryLevel: return keyword(c.battery_level);
    case ContextKey::ThresholdHigh: return std::to_string(c.threshold_high);
    case ContextKey::ThresholdMedium: return std::to_string(c.threshold_medium);
    default: return keyword(c.app_state);
    }
}

std::string feature_value(const FeatureBlock& f, FeatureKey k) {
    switch (k) {
    case FeatureKey::SensingInterval: return std::to_string(f.sensing_interval_ms);
    case FeatureKey::DecreasingFactor: return std::to_string(f.decreasing_factor);
    default: return keyword(f.function);
    }
}

template <typename Entry, typename ValueFn>
void print_block(std::ostringstream& out, const std::vector<Entry>& entries, ValueFn value) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out << "        " << keyword(entries[i].key) << " = " << value(entries[i].key);
        if (i + 1 < entries.size()) out << " AND";
        out << '\n';
    }
}

} // namespace

std::string pretty_print(const PolicyModel& model) {
    std::ostringstream out;
    for (std::size_t p = 0; p < model.policies.size(); ++p) {
        const AdaptationPolicy& pol = model.policies[p];
        if (p > 0) out << '\n';
        out << "AdaptationPolicy " << (pol.id.raw.empty() ? std::to_string(pol.id.value) : pol.id.raw)
            << " {\n";
        out << "    Condition {\n";
        print_block(out, pol.condition.entries,
                    [&](ContextKey k) { return context_value(pol.condition, k); });
        out << "    } then\n";
        out << "    Adaptation {\n";
        print_block(out, pol.adaptation.entries,
                    [&](FeatureKey k) { return feature_value(pol.adaptation, k); });
        out << "    }\n";
        out << "}\n";
    }
    return out.str();
}

bool semantic_equals(const PolicyModel& a, const PolicyModel& b) {
    if (a.policies.size() != b.policies.size()) return false;
    for (std::size_t i = 0; i < a.policies.size(); ++i) {
        const AdaptationPolicy& x = a.policies[i];
        const AdaptationPolicy& y = b.policies[i];
        if (x.id.value != y.id.value) return false;
        if (x.condition.battery_state != y.condition.battery_state) return false;
        if (x.condition.battery_level != y.condition.battery_level) return false;
        if (x.condition.threshold_high != y.condition.threshold_high) return false;
        if (x.condition.threshold_medium != y.condition.threshold_medium) return false;
        if (x.condition.app_state != y.condition.app_state) return false;
        if (x.adaptation.sensing_interval_ms != y.adaptation.sensing_interval_ms) return false;
        if (x.adaptation.decreasing_factor != y.adaptation.decreasing_factor) return false;
        if (x.adaptation.function != y.adaptation.function) return false;
    }
    return true;
}

} // namespace egen
