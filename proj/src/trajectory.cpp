#include "egen/trajectory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "egen/geo.hpp"

namespace egen {

namespace {

/// Metres per degree at the equator; synthetic tracks live near (0, 0)
/// where the lat/lon scales coincide.
const double kMPerDeg = kEarthRadiusM * M_PI / 180.0;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

} // namespace

double true_length_m(const Trajectory& traj) {
    double total = 0.0;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        const TrackPoint& a = traj.points[i - 1];
        const TrackPoint& b = traj.points[i];
        total += haversine_m(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg);
    }
    return total;
}

double duration_s(const Trajectory& traj) {
    return traj.points.empty() ? 0.0 : traj.points.back().t_s;
}

TrackPoint position_at(const Trajectory& traj, double t_s) {
    const auto& pts = traj.points;
    if (t_s <= pts.front().t_s) return pts.front();
    if (t_s >= pts.back().t_s) return pts.back();
    auto it = std::upper_bound(pts.begin(), pts.end(), t_s,
                               [](double t, const TrackPoint& p) { return t < p.t_s; });
    const TrackPoint& hi = *it;
    const TrackPoint& lo = *(it - 1);
    double u = (t_s - lo.t_s) / (hi.t_s - lo.t_s);
    return TrackPoint{lo.lat_deg + u * (hi.lat_deg - lo.lat_deg),
                      lo.lon_deg + u * (hi.lon_deg - lo.lon_deg), t_s};
}

std::optional<std::string> check_trajectory(const Trajectory& traj) {
    if (traj.points.size() < 2) return "trajectory needs at least two points";
    if (traj.points.front().t_s != 0.0) return "trajectory time must start at 0";
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const TrackPoint& p = traj.points[i];
        if (p.lat_deg < -90.0 || p.lat_deg > 90.0)
            return "latitude out of range at point " + std::to_string(i);
        if (p.lon_deg < -180.0 || p.lon_deg > 180.0)
            return "longitude out of range at point " + std::to_string(i);
        if (i > 0 && !(p.t_s > traj.points[i - 1].t_s))
            return "timestamps must be strictly increasing (point " + std::to_string(i) + ")";
    }
    return std::nullopt;
}

namespace {

/// Planar path position after walking arc length s, for each track shape.
struct PlanarWalker {
    TrackKind kind;
    double length;
    double amplitude;  // sinusoid only
    double wavelength; // sinusoid only
    double radius;     // arc only
    double x = 0.0;    // sinusoid marching state
    double s_done = 0.0;

    void position(double s, double& out_x, double& out_y) {
        switch (kind) {
        case TrackKind::Line:
            out_x = s;
            out_y = 0.0;
            return;
        case TrackKind::Arc:
            out_x = radius * std::sin(s / radius);
            out_y = radius * (1.0 - std::cos(s / radius));
            return;
        default: {
            // March x forward so that accumulated arc length reaches s.
            const double w = 2.0 * M_PI / wavelength;
            double remaining = s - s_done;
            const double step = std::max(length / 200000.0, 1e-6);
            while (remaining > 0.0) {
                double ds = std::min(step, remaining);
                double slope = amplitude * w * std::cos(w * x);
                x += ds / std::sqrt(1.0 + slope * slope);
                remaining -= ds;
            }
            s_done = s;
            out_x = x;
            out_y = amplitude * std::sin(w * x);
            return;
        }
        }
    }
};

} // namespace

Trajectory synth_track(TrackKind kind, double length_m, double speed_mps, double sample_hz) {
    Trajectory traj;
    std::ostringstream name;
    name << (kind == TrackKind::Line ? "line" : kind == TrackKind::Arc ? "arc" : "sinusoid") << ':'
         << length_m << 'm';
    traj.name = name.str();

    PlanarWalker walker;
    walker.kind = kind;
    walker.length = length_m;
    walker.amplitude = length_m / 50.0;
    walker.wavelength = length_m / 10.0;
    walker.radius = length_m / M_PI; // half circle: curvature pi / length

    const double duration = length_m / speed_mps;
    const double dt = 1.0 / sample_hz;

    std::vector<double> times;
    for (double t = 0.0; t < duration + dt * 1e-9; t += dt) times.push_back(std::min(t, duration));
    if (duration - times.back() > 1e-9) times.push_back(duration);

    for (double t : times) {
        double x = 0.0;
        double y = 0.0;
        walker.position(std::min(t * speed_mps, length_m), x, y);
        traj.points.push_back(TrackPoint{y / kMPerDeg, x / kMPerDeg, t});
    }
    return traj;
}

std::optional<std::string> parse_synth_spec(const std::string& text, SynthSpec& out) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ':')) parts.push_back(piece);
    if (parts.size() < 3 || parts.size() > 4)
        return "expected kind:length_m:speed_mps[:sample_hz], got '" + text + "'";

    SynthSpec spec;
    if (parts[0] == "line")
        spec.kind = TrackKind::Line;
    else if (parts[0] == "arc")
        spec.kind = TrackKind::Arc;
    else if (parts[0] == "sinusoid")
        spec.kind = TrackKind::Sinusoid;
    else
        return "unknown track kind '" + parts[0] + "' (want line, arc, or sinusoid)";

    if (!parse_double(parts[1], spec.length_m) || spec.length_m <= 0.0)
        return "track length must be a positive number";
    if (!parse_double(parts[2], spec.speed_mps) || spec.speed_mps <= 0.0)
        return "track speed must be a positive number";
    if (parts.size() == 4) {
        if (!parse_double(parts[3], spec.sample_hz) || spec.sample_hz <= 0.0)
            return "sample rate must be a positive number";
    }
    out = spec;
    return std::nullopt;
}

namespace {

std::optional<std::string> load_csv(const std::string& text, Trajectory& out) {
    Trajectory traj;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(t);
        while (std::getline(fs, field, ',')) fields.push_back(field);
        if (fields.size() != 3)
            return "line " + std::to_string(lineno) + ": expected lat,lon,t_s";

        TrackPoint p;
        if (!parse_double(fields[0], p.lat_deg) || !parse_double(fields[1], p.lon_deg) ||
            !parse_double(fields[2], p.t_s)) {
            if (first_record) { // optional header row
                first_record = false;
                continue;
            }
            return "line " + std::to_string(lineno) + ": malformed number";
        }
        first_record = false;
        traj.points.push_back(p);
    }

    if (!traj.points.empty()) {
        double t0 = traj.points.front().t_s;
        for (TrackPoint& p : traj.points) p.t_s -= t0;
    }
    if (auto err = check_trajectory(traj)) return err;
    out = std::move(traj);
    return std::nullopt;
}

bool parse_iso_time(const std::string& text, double& out_s) {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf", &year, &month, &day, &hour, &minute,
                    &second) != 6)
        return false;
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = 0;
    std::time_t epoch = timegm(&tm);
    if (epoch == static_cast<std::time_t>(-1)) return false;
    out_s = static_cast<double>(epoch) + second;
    return true;
}

std::string xml_attr(const std::string& tag, const std::string& name) {
    std::size_t at = tag.find(name + "=\"");
    if (at == std::string::npos) return "";
    at += name.size() + 2;
    std::size_t end = tag.find('"', at);
    if (end == std::string::npos) return "";
    return tag.substr(at, end - at);
}

std::optional<std::string> load_gpx(const std::string& text, Trajectory& out) {
    Trajectory traj;
    std::size_t pos = 0;
    while ((pos = text.find("<trkpt", pos)) != std::string::npos) {
        std::size_t tag_end = text.find('>', pos);
        std::size_t close = text.find("</trkpt>", pos);
        if (tag_end == std::string::npos || close == std::string::npos)
            return "unterminated trkpt element";
        std::string tag = text.substr(pos, tag_end - pos);
        std::string body = text.substr(tag_end + 1, close - tag_end - 1);

        TrackPoint p;
        if (!parse_double(xml_attr(tag, "lat"), p.lat_deg) ||
            !parse_double(xml_attr(tag, "lon"), p.lon_deg))
            return "trkpt without numeric lat/lon attributes";

        std::size_t t_open = body.find("<time>");
        std::size_t t_close = body.find("</time>");
        if (t_open == std::string::npos || t_close == std::string::npos)
            return "trkpt without a <time> child";
        if (!parse_iso_time(trim(body.substr(t_open + 6, t_close - t_open - 6)), p.t_s))
            return "unparseable trkpt timestamp";

        traj.points.push_back(p);
        pos = close + 8;
    }

    if (!traj.points.empty()) {
        double t0 = traj.points.front().t_s;
        for (TrackPoint& p : traj.points) p.t_s -= t0;
    }
    if (auto err = check_trajectory(traj)) return err;
    out = std::move(traj);
    return std::nullopt;
}

} // namespace

std::optional<std::string> load_trajectory(const std::string& path, Trajectory& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "cannot open '" + path + "'";
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    std::size_t first = text.find_first_not_of(" \t\r\n");
    bool looks_xml = first != std::string::npos && text[first] == '<';

    Trajectory traj;
    auto err = looks_xml ? load_gpx(text, traj) : load_csv(text, traj);
    if (err) return err;
    traj.name = path;
    out = std::move(traj);
    return std::nullopt;
}

} // namespace egen
