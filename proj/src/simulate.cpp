#include "egen/simulate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "egen/geo.hpp"

namespace egen {

namespace {

std::int64_t decide_interval_ms(const SimConfig& cfg, double battery_percent) {
    if (const FixedInterval* fixed = std::get_if<FixedInterval>(&cfg.policy))
        return std::max<std::int64_t>(fixed->ms, 1);

    int pct = static_cast<int>(std::floor(battery_percent));
    pct = std::max(0, std::min(100, pct));
    DeviceContext ctx{pct, cfg.charging, cfg.foreground};
    const PolicyModel& model = std::get<PolicyModel>(cfg.policy);
    return compute_interval(model, ctx, cfg.fallback_ms, cfg.cap_ms).interval_ms;
}

} // namespace

SimResult simulate(const Trajectory& traj, const DeviceProfile& profile, const SimConfig& config) {
    SimResult res;
    const double t_end = duration_s(traj);
    const double capacity = profile.capacity_mah;
    const double budget_mah = capacity * config.initial_battery_percent / 100.0;

    // Discharge rates in mAh per second: r1 while the receiver is acquiring,
    // r2 for the idle remainder of each segment.
    const double r1 = (profile.baseline_current_ma + profile.gps_current_ma) / 3600.0;
    const double r2 = profile.baseline_current_ma / 3600.0;

    std::vector<TrackPoint> fixes;
    double t = 0.0;
    double consumed_mah = 0.0;
    double active_s = 0.0;
    double duration = t_end;
    bool exhausted = false;

    while (true) {
        fixes.push_back(position_at(traj, t));
        double pct = config.initial_battery_percent - consumed_mah / capacity * 100.0;
        double interval_s = static_cast<double>(decide_interval_ms(config, pct)) / 1000.0;
        double t_next = t + std::max(interval_s, 0.001);
        double seg_end = std::min(t_next, t_end);
        double acquiring = std::min(profile.fix_acquisition_s, seg_end - t);

        // Battery crossing zero truncates the run at the exact instant.
        double remaining = budget_mah - consumed_mah;
        if (remaining <= r1 * acquiring) {
            double t_x = t + (r1 > 0.0 ? remaining / r1 : 0.0);
            active_s += std::min(acquiring, t_x - t);
            consumed_mah = budget_mah;
            duration = t_x;
            exhausted = true;
            break;
        }
        remaining -= r1 * acquiring;
        double idle = (seg_end - t) - acquiring;
        if (remaining <= r2 * idle) {
            double t_x = t + acquiring + (r2 > 0.0 ? remaining / r2 : 0.0);
            active_s += acquiring;
            consumed_mah = budget_mah;
            duration = t_x;
            exhausted = true;
            break;
        }

        consumed_mah += r1 * acquiring + r2 * idle;
        active_s += acquiring;
        if (t_next > t_end) break;
        t = t_next;
    }

    double measured = 0.0;
    for (std::size_t i = 1; i < fixes.size(); ++i)
        measured += haversine_m(fixes[i - 1].lat_deg, fixes[i - 1].lon_deg, fixes[i].lat_deg,
                                fixes[i].lon_deg);

    res.fixes_taken = static_cast<std::int64_t>(fixes.size());
    res.duration_s = duration;
    res.gps_active_s = active_s;
    res.gps_active_s_per_hour = duration > 0.0 ? active_s * 3600.0 / duration : 0.0;
    res.battery_consumed_mah = consumed_mah;
    res.battery_consumed_ma = duration > 0.0 ? consumed_mah * 3600.0 / duration : 0.0;
    res.final_battery_percent = config.initial_battery_percent - consumed_mah / capacity * 100.0;
    res.measured_distance_m = measured;
    res.true_distance_m = true_length_m(traj);
    res.accuracy_error_m = res.true_distance_m - res.measured_distance_m;
    res.battery_exhausted = exhausted;
    return res;
}

ComparisonReport compare(const Trajectory& traj, const DeviceProfile& profile,
                         const PolicyModel& model, std::int64_t fixed_ms, const SimConfig& base) {
    ComparisonReport report;

    SimConfig adaptive_cfg = base;
    adaptive_cfg.policy = model;
    report.adaptive = simulate(traj, profile, adaptive_cfg);

    SimConfig fixed_cfg = base;
    fixed_cfg.policy = FixedInterval{fixed_ms};
    report.fixed = simulate(traj, profile, fixed_cfg);

    report.gps_reduction_s_per_hour =
        report.fixed.gps_active_s_per_hour - report.adaptive.gps_active_s_per_hour;
    report.energy_savings_ma = report.fixed.battery_consumed_ma - report.adaptive.battery_consumed_ma;
    report.accuracy_degrade_m = report.adaptive.accuracy_error_m - report.fixed.accuracy_error_m;
    return report;
}

std::optional<std::string> load_profile(const std::string& path, DeviceProfile& out) {
    std::ifstream in(path);
    if (!in) return "cannot open '" + path + "'";

    auto trim = [](const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        std::size_t e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    };

    DeviceProfile profile = out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            return "line " + std::to_string(lineno) + ": expected key=value";
        std::string key = trim(line.substr(0, eq));
        std::string value_text = trim(line.substr(eq + 1));
        if (key.empty() || value_text.empty())
            return "line " + std::to_string(lineno) + ": expected key=value";

        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(value_text, &used);
            if (used != value_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            return "line " + std::to_string(lineno) + ": '" + value_text + "' is not a number";
        }
        if (!(value > 0.0) || !std::isfinite(value))
            return "line " + std::to_string(lineno) + ": " + key + " must be positive";

        if (key == "capacity_mah")
            profile.capacity_mah = value;
        else if (key == "baseline_current_ma")
            profile.baseline_current_ma = value;
        else if (key == "gps_current_ma")
            profile.gps_current_ma = value;
        else if (key == "fix_acquisition_s")
            profile.fix_acquisition_s = value;
        else
            return "line " + std::to_string(lineno) + ": unknown key '" + key + "'";
    }
    out = profile;
    return std::nullopt;
}

namespace {

nlohmann::json result_json(const SimResult& r, const std::string& arm_label) {
    nlohmann::json j;
    j["arm"] = arm_label;
    j["fixes_taken"] = r.fixes_taken;
    j["duration_s"] = r.duration_s;
    j["gps_active_s"] = r.gps_active_s;
    j["gps_active_s_per_hour"] = r.gps_active_s_per_hour;
    j["battery_consumed_mah"] = r.battery_consumed_mah;
    j["battery_consumed_ma"] = r.battery_consumed_ma;
    j["final_battery_percent"] = r.final_battery_percent;
    j["measured_distance_m"] = r.measured_distance_m;
    j["true_distance_m"] = r.true_distance_m;
    j["accuracy_error_m"] = r.accuracy_error_m;
    j["battery_exhausted"] = r.battery_exhausted;
    return j;
}

} // namespace

std::string to_json(const SimResult& r, const std::string& arm_label) {
    return result_json(r, arm_label).dump(2) + "\n";
}

std::string to_json(const ComparisonReport& r) {
    nlohmann::json j;
    j["adaptive"] = result_json(r.adaptive, "adaptive");
    j["fixed"] = result_json(r.fixed, "fixed");
    j["deltas"]["gps_reduction_s_per_hour"] = r.gps_reduction_s_per_hour;
    j["deltas"]["energy_savings_ma"] = r.energy_savings_ma;
    j["deltas"]["accuracy_degrade_m"] = r.accuracy_degrade_m;
    return j.dump(2) + "\n";
}

} // namespace egen
