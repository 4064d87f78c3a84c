#include "egen/codegen.hpp"

#include <sstream>

namespace egen {

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    std::size_t at = 0;
    while ((at = text.find(from, at)) != std::string::npos) {
        text.replace(at, from.size(), to);
        at += to.size();
    }
    return text;
}

std::string basename_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string header_comment(const PolicyModel& model) {
    std::string src = basename_of(model.source_name);
    std::string line = " * Generated by egen";
    if (!src.empty()) line += " from " + src;
    line += ". Do not edit by hand.";
    return line;
}

std::string guard_expression(const AdaptationPolicy& p) {
    std::ostringstream out;
    out << (p.condition.battery_state == BatteryState::Charging ? "charging" : "!charging");
    out << " && band == BAND_";
    switch (p.condition.battery_level) {
    case BatteryLevel::High: out << "HIGH"; break;
    case BatteryLevel::Medium: out << "MEDIUM"; break;
    default: out << "LOW"; break;
    }
    out << (p.condition.app_state == AppState::Foreground ? " && foreground" : " && !foreground");
    return out.str();
}

std::string adaptation_utility(const PolicyModel& model, const GenOptions& opt) {
    auto [th, tm] = model_thresholds(model);
    std::ostringstream out;
    out << "package " << opt.package_name << ";\n"
        << "\n"
        << "import android.os.BatteryManager;\n"
        << "\n"
        << "/**\n"
        << " * Maps the battery context reported by BatteryManager onto the\n"
        << " * location-sensing interval declared by the adaptation policies.\n"
        << " *\n"
        << header_comment(model) << "\n"
        << " */\n"
        << "public final class AdaptationUtility {\n"
        << "\n"
        << "    public static final int THRESHOLD_HIGH = " << th << ";\n"
        << "    public static final int THRESHOLD_MEDIUM = " << tm << ";\n"
        << "    public static final long FALLBACK_INTERVAL_MS = " << opt.fallback_ms << "L;\n"
        << "    public static final long MAX_INTERVAL_MS = " << opt.cap_ms << "L;\n"
        << "\n"
        << "    public static final int BAND_HIGH = 0;\n"
        << "    public static final int BAND_MEDIUM = 1;\n"
        << "    public static final int BAND_LOW = 2;\n"
        << "\n"
        << "    private AdaptationUtility() {\n"
        << "    }\n"
        << "\n"
        << "    /** Battery band for a remaining-capacity percentage. */\n"
        << "    public static int batteryBand(int batteryPercent) {\n"
        << "        if (batteryPercent >= THRESHOLD_HIGH) {\n"
        << "            return BAND_HIGH;\n"
        << "        }\n"
        << "        if (batteryPercent >= THRESHOLD_MEDIUM) {\n"
        << "            return BAND_MEDIUM;\n"
        << "        }\n"
        << "        return BAND_LOW;\n"
        << "    }\n"
        << "\n"
        << "    /** Whole percentage points lost since the current band was entered. */\n"
        << "    public static int dropsInBand(int batteryPercent) {\n"
        << "        int band = batteryBand(batteryPercent);\n"
        << "        if (band == BAND_HIGH) {\n"
        << "            return 100 - batteryPercent;\n"
        << "        }\n"
        << "        if (band == BAND_MEDIUM) {\n"
        << "            return THRESHOLD_HIGH - 1 - batteryPercent;\n"
        << "        }\n"
        << "        return THRESHOLD_MEDIUM - 1 - batteryPercent;\n"
        << "    }\n"
        << "\n"
        << "    private static long linear(long baseMs, long factor, int drops) {\n"
        << "        return Math.min(baseMs + factor * drops, MAX_INTERVAL_MS);\n"
        << "    }\n"
        << "\n"
        << "    private static long exponential(long baseMs, long factor, int drops) {\n"
        << "        double value = baseMs;\n"
        << "        double growth = 1.0 + factor / 100.0;\n"
        << "        for (int i = 0; i < drops; i++) {\n"
        << "            value = value * growth;\n"
        << "            if (value >= MAX_INTERVAL_MS) {\n"
        << "                return MAX_INTERVAL_MS;\n"
        << "            }\n"
        << "        }\n"
        << "        return Math.min(Math.round(value), MAX_INTERVAL_MS);\n"
        << "    }\n";

    for (const AdaptationPolicy& p : model.policies) {
        out << "\n"
            << "    // AdaptationPolicy " << p.id.value
            << ": BatteryState=" << keyword(p.condition.battery_state)
            << " BatteryLevel=" << keyword(p.condition.battery_level)
            << " AppState=" << keyword(p.condition.app_state) << "\n"
            << "    private static long adaptationPolicy" << p.id.value << "(int drops) {\n"
            << "        return "
            << (p.adaptation.function == BatteryAwareFunction::Linear ? "linear" : "exponential")
            << "(" << p.adaptation.sensing_interval_ms << "L, " << p.adaptation.decreasing_factor
            << "L, drops);\n"
            << "    }\n";
    }

    out << "\n"
        << "    /**\n"
        << "     * Dynamic sensing interval for the current context. Policies are\n"
        << "     * tried in declaration order; the first match wins.\n"
        << "     */\n"
        << "    public static long sensingIntervalMs(int batteryPercent, boolean charging,"
           " boolean foreground) {\n"
        << "        int band = batteryBand(batteryPercent);\n"
        << "        int drops = dropsInBand(batteryPercent);\n";
    for (const AdaptationPolicy& p : model.policies) {
        out << "        if (" << guard_expression(p) << ") {\n"
            << "            return adaptationPolicy" << p.id.value << "(drops);\n"
            << "        }\n";
    }
    out << "        return FALLBACK_INTERVAL_MS;\n"
        << "    }\n"
        << "}\n";
    return out.str();
}

constexpr const char* kBatteryAwareTemplate = R"JAVA(package __PACKAGE__;

import android.app.Activity;
import android.content.Context;
import android.location.Location;
import android.os.BatteryManager;
import android.os.Bundle;

/**
 * Activity base class wiring battery state to the sensing schedule.
 * Subclasses receive each fix through onLocationUpdate.
 *
__HEADER__
 */
public abstract class BatteryAware extends Activity {

    private LocationUtility locationUtility;
    private boolean foreground;

    @Override
    protected void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        locationUtility = new LocationUtility(this);
    }

    @Override
    protected void onStart() {
        super.onStart();
        foreground = true;
    }

    @Override
    protected void onResume() {
        super.onResume();
        foreground = true;
        scheduleNextFix();
    }

    @Override
    protected void onPause() {
        super.onPause();
        foreground = false;
        scheduleNextFix();
    }

    /** Re-reads the battery context and re-arms the location request. */
    void scheduleNextFix() {
        BatteryManager batteryManager = (BatteryManager) getSystemService(Context.BATTERY_SERVICE);
        int batteryPercent = batteryManager.getIntProperty(BatteryManager.BATTERY_PROPERTY_CAPACITY);
        int status = batteryManager.getIntProperty(BatteryManager.BATTERY_PROPERTY_STATUS);
        boolean charging = status == BatteryManager.BATTERY_STATUS_CHARGING
                || status == BatteryManager.BATTERY_STATUS_FULL;
        long intervalMs = AdaptationUtility.sensingIntervalMs(batteryPercent, charging, foreground);
        locationUtility.requestUpdates(intervalMs, this::dispatchLocation);
    }

    private void dispatchLocation(Location location) {
        onLocationUpdate(location.getLatitude(), location.getLongitude());
        scheduleNextFix();
    }

    /** Called once per location fix with the reported coordinates. */
    protected abstract void onLocationUpdate(double latitude, double longitude);
}
)JAVA";

constexpr const char* kLocationUtilityTemplate = R"JAVA(package __PACKAGE__;

import android.app.Activity;
import android.location.Location;
import android.os.Looper;

import com.google.android.gms.location.FusedLocationProviderClient;
import com.google.android.gms.location.LocationCallback;
import com.google.android.gms.location.LocationRequest;
import com.google.android.gms.location.LocationResult;
import com.google.android.gms.location.LocationServices;

/**
 * Requests fixes from the fused location provider at the interval chosen
 * by AdaptationUtility.
 *
__HEADER__
 */
public class LocationUtility {

    /** Receives each location fix delivered by the provider. */
    public interface FixListener {
        void onFix(Location location);
    }

    private final FusedLocationProviderClient client;
    private LocationCallback activeCallback;

    public LocationUtility(Activity activity) {
        client = LocationServices.getFusedLocationProviderClient(activity);
    }

    /** Cancels any pending request and re-arms at the given interval. */
    public void requestUpdates(long intervalMs, final FixListener listener) {
        stop();
        LocationRequest request = LocationRequest.create()
                .setInterval(intervalMs)
                .setFastestInterval(intervalMs)
                .setPriority(LocationRequest.PRIORITY_HIGH_ACCURACY);
        activeCallback = new LocationCallback() {
            @Override
            public void onLocationResult(LocationResult result) {
                Location location = result.getLastLocation();
                if (location != null) {
                    listener.onFix(location);
                }
            }
        };
        client.requestLocationUpdates(request, activeCallback, Looper.getMainLooper());
    }

    public void stop() {
        if (activeCallback != null) {
            client.removeLocationUpdates(activeCallback);
            activeCallback = null;
        }
    }
}
)JAVA";

constexpr const char* kMainActivityTemplate = R"JAVA(package __PACKAGE__;

/**
 * Application entry point. The battery-aware sensing plumbing lives in
 * BatteryAware; put the application logic here.
 *
__HEADER__
 */
public class MainActivity extends BatteryAware {

    @Override
    protected void onLocationUpdate(double latitude, double longitude) {
        // Application logic for each fix goes here.
    }
}
)JAVA";

} // namespace

bool valid_package_name(std::string_view name) {
    if (name.empty()) return false;
    bool segment_start = true;
    for (char c : name) {
        if (segment_start) {
            if (c < 'a' || c > 'z') return false;
            segment_start = false;
        } else if (c == '.') {
            segment_start = true;
        } else if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
            return false;
        }
    }
    return !segment_start; // no trailing dot
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

GenResult generate(const PolicyModel& model, const GenOptions& options) {
    GenResult result;
    if (!valid_package_name(options.package_name)) {
        result.diagnostics.push_back(
            {Severity::Error, "EGEN-G01",
             "invalid Java package name '" + options.package_name +
                 "' (expected lowercase dotted segments)",
             Span{}});
        return result;
    }
    if (model.policies.empty()) {
        result.diagnostics.push_back({Severity::Error, "EGEN-G02",
                                      "refusing to generate from an empty policy model", Span{}});
        return result;
    }

    std::string pkg_dir = options.package_name;
    for (char& c : pkg_dir)
        if (c == '.') c = '/';

    auto add = [&](const char* name, std::string contents) {
        GeneratedFile f;
        f.relative_path = pkg_dir + "/" + name + ".java";
        f.checksum = fnv1a64(contents);
        f.contents = std::move(contents);
        result.files.push_back(std::move(f));
    };

    auto fill = [&](const char* tmpl) {
        std::string text = replace_all(tmpl, "__PACKAGE__", options.package_name);
        return replace_all(text, "__HEADER__", header_comment(model));
    };

    add("AdaptationUtility", adaptation_utility(model, options));
    add("BatteryAware", fill(kBatteryAwareTemplate));
    add("LocationUtility", fill(kLocationUtilityTemplate));
    add("MainActivity", fill(kMainActivityTemplate));
    return result;
}

} // namespace egen
