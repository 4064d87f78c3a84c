/// @file trajectory.hpp
/// Timestamped tracks: synthetic generation, file loading, interpolation.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace egen {

struct TrackPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double t_s = 0.0;
};

/// At least two points, strictly increasing t_s starting at 0, coordinates
/// inside [-90,90] x [-180,180]. Loaders and synth_track enforce this; the
/// simulator assumes it.
struct Trajectory {
    std::vector<TrackPoint> points;
    std::string name;
};

/// Sum of haversine legs over consecutive points.
double true_length_m(const Trajectory& traj);

double duration_s(const Trajectory& traj);

/// Position at time t by linear interpolation between bracketing points,
/// clamped to the endpoints outside [0, duration].
TrackPoint position_at(const Trajectory& traj, double t_s);

/// Empty optional when the trajectory satisfies the invariants above,
/// otherwise a one-line reason.
std::optional<std::string> check_trajectory(const Trajectory& traj);

enum class TrackKind { Line, Arc, Sinusoid };

/// Constant-speed synthetic track of the requested path length, sampled at
/// `sample_hz`. Paths are built in a local planar frame near (0 N, 0 E) and
/// mapped to degrees at kEarthRadiusM scale. Arc walks a half circle
/// (curvature pi/length); Sinusoid follows y = A sin(2 pi x / lambda) with
/// A = length/50 and lambda = length/10, marched by arc length.
Trajectory synth_track(TrackKind kind, double length_m, double speed_mps, double sample_hz = 1.0);

/// Parses "line:3060:5" or "arc:3060:5:2" into a track. Returns error text
/// on malformed input.
struct SynthSpec {
    TrackKind kind = TrackKind::Line;
    double length_m = 0.0;
    double speed_mps = 0.0;
    double sample_hz = 1.0;
};

std::optional<std::string> parse_synth_spec(const std::string& text, SynthSpec& out);

/// Loads `lat,lon,t_s` CSV (optional header, `#` comments) or a minimal GPX
/// subset (trkpt lat/lon attributes with <time> children, ISO-8601 UTC).
/// The format is chosen by content sniffing, not extension. On failure
/// returns an error message and leaves `out` untouched.
std::optional<std::string> load_trajectory(const std::string& path, Trajectory& out);

} // namespace egen
