/// @file simulate.hpp
/// Event-loop sensing simulator and the adaptive-vs-fixed comparison.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "egen/ast.hpp"
#include "egen/engine.hpp"
#include "egen/trajectory.hpp"

namespace egen {

struct DeviceProfile {
    double capacity_mah = 3040.0;
    double baseline_current_ma = 90.0;
    double gps_current_ma = 140.0;
    double fix_acquisition_s = 1.0;
};

/// Parses a key=value file (capacity_mah, baseline_current_ma,
/// gps_current_ma, fix_acquisition_s; `#` comments and blank lines
/// ignored). Unknown keys and non-positive values are errors. Missing keys
/// keep their defaults.
std::optional<std::string> load_profile(const std::string& path, DeviceProfile& out);

/// Constant sensing interval used for the non-adaptive arm.
struct FixedInterval {
    std::int64_t ms = 0;
};

struct SimConfig {
    std::variant<FixedInterval, PolicyModel> policy; // fixed or adaptive arm
    double initial_battery_percent = 100.0;
    bool charging = false;
    bool foreground = true;
    std::int64_t fallback_ms = kDefaultFallbackMs;
    std::int64_t cap_ms = kDefaultCapMs;
};

struct SimResult {
    std::int64_t fixes_taken = 0;
    double duration_s = 0.0;         // simulated wall time, may stop early on exhaustion
    double gps_active_s = 0.0;
    double gps_active_s_per_hour = 0.0;
    double battery_consumed_mah = 0.0;
    double battery_consumed_ma = 0.0; // mean current over the simulated duration
    double final_battery_percent = 0.0;
    double measured_distance_m = 0.0; // polyline over the taken fixes
    double true_distance_m = 0.0;
    double accuracy_error_m = 0.0;    // true - measured
    bool battery_exhausted = false;   // EGEN-S01: run truncated at 0 percent
};

/// Walks the trajectory taking a fix at t=0 and then after each decided
/// interval. Each fix keeps the receiver active for min(acquisition, gap to
/// next fix, time to trajectory end); energy is baseline current over wall
/// time plus GPS current over active time. Battery is continuous; crossing
/// zero stops the run at the exact crossing instant. Deterministic.
SimResult simulate(const Trajectory& traj, const DeviceProfile& profile, const SimConfig& config);

struct ComparisonReport {
    SimResult adaptive;
    SimResult fixed;
    double gps_reduction_s_per_hour = 0.0; // fixed - adaptive
    double energy_savings_ma = 0.0;        // fixed - adaptive
    double accuracy_degrade_m = 0.0;       // adaptive error - fixed error
};

/// Runs both arms over the same trajectory and profile. `base` supplies the
/// battery/state knobs; its policy variant is ignored.
ComparisonReport compare(const Trajectory& traj,
                         const DeviceProfile& profile,
                         const PolicyModel& model,
                         std::int64_t fixed_ms,
                         const SimConfig& base);

std::string to_json(const SimResult& r, const std::string& arm_label);
std::string to_json(const ComparisonReport& r);

} // namespace egen
