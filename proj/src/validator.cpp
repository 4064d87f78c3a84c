#include "egen/validator.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

namespace egen {

namespace {

void check_duplicate_ids(const PolicyModel& m, std::vector<Diagnostic>& out) {
    std::map<std::int32_t, std::vector<const AdaptationPolicy*>> by_id;
    for (const AdaptationPolicy& p : m.policies) by_id[p.id.value].push_back(&p);
    for (const auto& [id, group] : by_id) {
        if (group.size() < 2) continue;
        for (const AdaptationPolicy* p : group) {
            out.push_back({Severity::Error, "V001",
                           "duplicate policy id " + std::to_string(id) + " (" +
                               std::to_string(group.size()) + " declarations)",
                           p->id.span});
        }
    }
}

template <typename Entry>
void check_duplicate_bindings(const std::vector<Entry>& entries, const char* block_name,
                              std::vector<Diagnostic>& out) {
    for (const Entry& e : entries) {
        std::size_t count = 0;
        for (const Entry& other : entries)
            if (other.key == e.key) ++count;
        if (count > 1) {
            out.push_back({Severity::Error, "V002",
                           std::string("duplicate binding '") + keyword(e.key) + "' in " +
                               block_name + " block",
                           e.span});
        }
    }
}

Span entry_span(const ContextBlock& c, ContextKey key, const Span& fallback) {
    for (const ContextEntry& e : c.entries)
        if (e.key == key) return e.span;
    return fallback;
}

void check_thresholds(const AdaptationPolicy& p, std::vector<Diagnostic>& out) {
    const ContextBlock& c = p.condition;
    for (ContextKey key : {ContextKey::ThresholdHigh, ContextKey::ThresholdMedium}) {
        std::int32_t v = key == ContextKey::ThresholdHigh ? c.threshold_high : c.threshold_medium;
        if (v < 1 || v > 99) {
            out.push_back({Severity::Error, "V004",
                           std::string(keyword(key)) + " = " + std::to_string(v) +
                               " is outside 1..=99",
                           entry_span(c, key, p.span)});
        }
    }
    if (c.threshold_medium >= c.threshold_high) {
        out.push_back({Severity::Error, "V003",
                       "Threshold_Medium (" + std::to_string(c.threshold_medium) +
                           ") must be below Threshold_High (" + std::to_string(c.threshold_high) +
                           ")",
                       entry_span(c, ContextKey::ThresholdMedium, p.span)});
    }
}

void check_interval(const AdaptationPolicy& p, std::vector<Diagnostic>& out) {
    if (p.adaptation.sensing_interval_ms != 0) return;
    Span where = p.span;
    for (const FeatureEntry& e : p.adaptation.entries)
        if (e.key == FeatureKey::SensingInterval) where = e.span;
    out.push_back({Severity::Error, "V005", "SensingInterval must be positive", where});
}

void check_overlaps(const PolicyModel& m, std::vector<Diagnostic>& out) {
    using Triple = std::tuple<BatteryState, BatteryLevel, AppState>;
    std::map<Triple, std::vector<const AdaptationPolicy*>> groups;
    for (const AdaptationPolicy& p : m.policies)
        groups[{p.condition.battery_state, p.condition.battery_level, p.condition.app_state}]
            .push_back(&p);
    for (const auto& [triple, group] : groups) {
        if (group.size() < 2) continue;
        std::string ctx = std::string(keyword(std::get<0>(triple))) + "/" +
                          keyword(std::get<1>(triple)) + "/" + keyword(std::get<2>(triple));
        for (const AdaptationPolicy* p : group) {
            out.push_back({Severity::Warning, "V006",
                           std::to_string(group.size()) + " policies share the context " + ctx +
                               "; only the first in declaration order can ever match",
                           p->span});
        }
    }
}

void check_threshold_consistency(const PolicyModel& m, std::vector<Diagnostic>& out) {
    if (m.policies.empty()) return;
    const ContextBlock& first = m.policies.front().condition;
    for (std::size_t i = 1; i < m.policies.size(); ++i) {
        const ContextBlock& c = m.policies[i].condition;
        if (c.threshold_high == first.threshold_high &&
            c.threshold_medium == first.threshold_medium)
            continue;
        out.push_back({Severity::Warning, "V007",
                       "thresholds (" + std::to_string(c.threshold_high) + "/" +
                           std::to_string(c.threshold_medium) +
                           ") differ from the first policy (" +
                           std::to_string(first.threshold_high) + "/" +
                           std::to_string(first.threshold_medium) +
                           "); band boundaries follow the first policy",
                       m.policies[i].span});
    }
}

} // namespace

std::vector<Diagnostic> validate(const PolicyModel& model) {
    std::vector<Diagnostic> out;
    check_duplicate_ids(model, out);
    for (const AdaptationPolicy& p : model.policies) {
        check_duplicate_bindings(p.condition.entries, "a Condition", out);
        check_duplicate_bindings(p.adaptation.entries, "an Adaptation", out);
        check_thresholds(p, out);
        check_interval(p, out);
    }
    check_overlaps(model, out);
    check_threshold_consistency(model, out);

    std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
        return a.code < b.code;
    });
    return out;
}

} // namespace egen
