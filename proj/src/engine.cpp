#include "egen/engine.hpp"

#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace egen {

const char* band_name(Band b) {
    switch (b) {
    case Band::High: return "High";
    case Band::Medium: return "Medium";
    default: return "Low";
    }
}

Band classify_band(int battery_percent, int threshold_high, int threshold_medium) {
    if (battery_percent >= threshold_high) return Band::High;
    if (battery_percent >= threshold_medium) return Band::Medium;
    return Band::Low;
}

std::pair<std::int32_t, std::int32_t> model_thresholds(const PolicyModel& model) {
    if (model.policies.empty()) return {kDefaultThresholdHigh, kDefaultThresholdMedium};
    const ContextBlock& c = model.policies.front().condition;
    return {c.threshold_high, c.threshold_medium};
}

const AdaptationPolicy* select_policy(const PolicyModel& model, const DeviceContext& ctx) {
    auto [th, tm] = model_thresholds(model);
    Band band = classify_band(ctx.battery_percent, th, tm);
    BatteryState state = ctx.charging ? BatteryState::Charging : BatteryState::Discharging;
    BatteryLevel level = band == Band::High     ? BatteryLevel::High
                         : band == Band::Medium ? BatteryLevel::Medium
                                                : BatteryLevel::Low;
    AppState app = ctx.foreground ? AppState::Foreground : AppState::Background;
    for (const AdaptationPolicy& p : model.policies) {
        if (p.condition.battery_state == state && p.condition.battery_level == level &&
            p.condition.app_state == app)
            return &p;
    }
    return nullptr;
}

std::int64_t linear_interval_ms(std::int64_t base_ms, std::int64_t factor, int drops) {
    return base_ms + factor * drops;
}

std::int64_t exponential_interval_ms(std::int64_t base_ms, std::int64_t factor, int drops) {
    // base * ((100 + f)/100)^d with round-half-up, kept exact: doubles lose
    // integer resolution once the value passes 2^53 and the result must be
    // reproducible digit-for-digit.
    namespace mp = boost::multiprecision;
    mp::cpp_int num = base_ms;
    mp::cpp_int den = 1;
    for (int i = 0; i < drops; ++i) {
        num *= 100 + factor;
        den *= 100;
    }
    mp::cpp_int rounded = (2 * num + den) / (2 * den);
    if (rounded > std::numeric_limits<std::int64_t>::max())
        return std::numeric_limits<std::int64_t>::max();
    return rounded.convert_to<std::int64_t>();
}

IntervalDecision compute_interval(const PolicyModel& model, const DeviceContext& ctx,
                                  std::int64_t fallback_ms, std::int64_t cap_ms) {
    auto [th, tm] = model_thresholds(model);
    IntervalDecision d;
    d.band = classify_band(ctx.battery_percent, th, tm);

    // Percent at which the current band is entered from above; drops count
    // whole percentage points lost since then.
    int entry = d.band == Band::High ? 100 : d.band == Band::Medium ? th - 1 : tm - 1;
    d.drops_in_band = entry - ctx.battery_percent;

    const AdaptationPolicy* p = select_policy(model, ctx);
    if (p == nullptr) {
        d.interval_ms = fallback_ms;
    } else {
        d.matched_policy_id = p->id.value;
        std::int64_t base = p->adaptation.sensing_interval_ms;
        std::int64_t factor = p->adaptation.decreasing_factor;
        if (p->adaptation.function == BatteryAwareFunction::Linear)
            d.interval_ms = linear_interval_ms(base, factor, d.drops_in_band);
        else
            d.interval_ms = exponential_interval_ms(base, factor, d.drops_in_band);
    }
    d.interval_ms = std::min(d.interval_ms, cap_ms);
    return d;
}

std::vector<IntervalRow> interval_table(const PolicyModel& model, bool charging, bool foreground,
                                        std::int64_t fallback_ms, std::int64_t cap_ms) {
    std::vector<IntervalRow> rows;
    rows.reserve(101);
    for (int pct = 100; pct >= 0; --pct) {
        DeviceContext ctx{pct, charging, foreground};
        rows.push_back({pct, compute_interval(model, ctx, fallback_ms, cap_ms).interval_ms});
    }
    return rows;
}

std::string interval_table_csv(const std::vector<IntervalRow>& rows) {
    std::ostringstream out;
    for (const IntervalRow& r : rows) out << r.percent << ',' << r.interval_ms << '\n';
    return out.str();
}

std::string interval_table_json(const std::vector<IntervalRow>& rows) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "  {\"percent\": " << rows[i].percent << ", \"interval_ms\": " << rows[i].interval_ms
            << '}';
        if (i + 1 < rows.size()) out << ',';
        out << '\n';
    }
    out << "]\n";
    return out.str();
}

} // namespace egen
