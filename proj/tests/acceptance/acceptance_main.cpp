// Acceptance gate for the toolchain: eight end-to-end criteria, one
// pass/fail line each. Exits nonzero if any criterion fails. Each check
// recomputes its expectations from independent oracles (bignum arithmetic,
// closed-form identities, frozen reference constants) rather than from the
// implementation under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "egen/codegen.hpp"
#include "egen/engine.hpp"
#include "egen/geo.hpp"
#include "egen/parser.hpp"
#include "egen/simulate.hpp"
#include "egen/trajectory.hpp"
#include "egen/validator.hpp"

#include "support/bigdec.hpp"
#include "support/model_gen.hpp"
#include "support/paths.hpp"

using namespace egen;

namespace {

using Notes = std::vector<std::string>;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

bool load_corpus_model(const std::string& rel, PolicyModel& out, Notes& notes) {
    ParseResult r = parse(testsupport::slurp(testsupport::corpus(rel)), rel);
    if (!r.ok()) {
        notes.push_back(rel + " failed to parse");
        return false;
    }
    out = std::move(r.model);
    return true;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_grammar(Notes& notes) {
    ParseResult r =
        parse(testsupport::slurp(testsupport::corpus("reference.egen")), "reference.egen");
    if (!r.diagnostics.empty() || r.model.policies.size() != 1) {
        notes.push_back("reference policy text did not parse cleanly");
        return false;
    }
    const AdaptationPolicy& p = r.model.policies.front();
    bool fields_ok = p.id.value == 1 &&
                     p.condition.battery_state == BatteryState::Discharging &&
                     p.condition.battery_level == BatteryLevel::High &&
                     p.condition.threshold_high == 80 && p.condition.threshold_medium == 50 &&
                     p.condition.app_state == AppState::Foreground &&
                     p.adaptation.sensing_interval_ms == 3000 &&
                     p.adaptation.decreasing_factor == 10 &&
                     p.adaptation.function == BatteryAwareFunction::Linear;
    if (!fields_ok) {
        notes.push_back("reference policy parsed into unexpected field values");
        return false;
    }

    const std::pair<const char*, const char*> corpus[] = {
        {"negative/e001_stray_char.egen", "E001"},
        {"negative/e010_missing_binding.egen", "E010"},
        {"negative/e010_unclosed.egen", "E010"},
        {"negative/e011_misplaced_binding.egen", "E011"},
        {"negative/e012_overflow.egen", "E012"},
        {"negative/v001_duplicate_id.egen", "V001"},
        {"negative/v002_duplicate_binding.egen", "V002"},
        {"negative/v003_threshold_order.egen", "V003"},
        {"negative/v004_threshold_range.egen", "V004"},
        {"negative/v005_zero_interval.egen", "V005"},
        {"negative/v006_overlap.egen", "V006"},
        {"negative/v007_threshold_mismatch.egen", "V007"},
    };
    bool all_ok = true;
    for (const auto& [rel, code] : corpus) {
        ParseResult pr = parse(testsupport::slurp(testsupport::corpus(rel)), rel);
        std::vector<Diagnostic> diags = pr.diagnostics;
        if (diags.empty()) diags = validate(pr.model);
        bool file_ok = !diags.empty();
        for (const Diagnostic& d : diags) file_ok = file_ok && d.code == code;
        if (!file_ok) {
            notes.push_back(std::string(rel) + " did not yield exactly " + code);
            all_ok = false;
        }
    }
    return all_ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_roundtrip(Notes& notes) {
    testsupport::ModelGen gen(20260815);
    for (int i = 0; i < 200; ++i) {
        PolicyModel m = i % 2 == 0 ? gen.next_model() : gen.next_clean_model();
        ParseResult r = parse(pretty_print(m), "roundtrip");
        if (!r.ok() || !semantic_equals(r.model, m)) {
            notes.push_back("round trip diverged on random model #" + std::to_string(i));
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_table_shape(Notes& notes) {
    PolicyModel model;
    if (!load_corpus_model("three_band.egen", model, notes)) return false;

    auto rows = interval_table(model, false, true, kDefaultFallbackMs, kDefaultCapMs);
    if (rows.size() != 101) {
        notes.push_back("table does not have 101 rows");
        return false;
    }
    // Bands: 100..80 base 3000 slope 10; 79..50 base 4000 slope 20;
    // 49..0 base 5000 slope 30. Exact integers, tolerance zero.
    bool ok = true;
    for (const IntervalRow& row : rows) {
        std::int64_t want = row.percent >= 80   ? 3000 + 10 * (100 - row.percent)
                            : row.percent >= 50 ? 4000 + 20 * (79 - row.percent)
                                                : 5000 + 30 * (49 - row.percent);
        if (row.interval_ms != want) {
            notes.push_back("row " + std::to_string(row.percent) + " is " +
                            std::to_string(row.interval_ms) + ", want " + std::to_string(want));
            ok = false;
        }
    }
    // The same data, read as shape: non-decreasing within bands as percent
    // falls, base resets at band entries, strictly steeper slopes downward.
    if (ok) {
        ok = rows[0].interval_ms == 3000 && rows[21].interval_ms == 4000 &&
             rows[51].interval_ms == 5000;
        std::int64_t high_slope = rows[1].interval_ms - rows[0].interval_ms;
        std::int64_t med_slope = rows[22].interval_ms - rows[21].interval_ms;
        std::int64_t low_slope = rows[52].interval_ms - rows[51].interval_ms;
        ok = ok && high_slope == 10 && med_slope == 20 && low_slope == 30;
        if (!ok) notes.push_back("band entries or slopes are off");
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_curve_oracle(Notes& notes) {
    constexpr std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max();
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {
        {3000, 10}, {4000, 20}, {5000, 30}};
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 25; ++i)
        pairs.emplace_back(1 + static_cast<std::int64_t>(rng() % 100000),
                           static_cast<std::int64_t>(rng() % 1000));

    for (const auto& [base, factor] : pairs) {
        for (int d = 0; d <= 100; ++d) {
            std::int64_t exp_want = testsupport::exp_oracle(base, factor, d, kNoCap);
            std::int64_t exp_got = exponential_interval_ms(base, factor, d);
            if (exp_got != exp_want) {
                notes.push_back("exponential(" + std::to_string(base) + "," +
                                std::to_string(factor) + "," + std::to_string(d) + ") = " +
                                std::to_string(exp_got) + ", oracle " + std::to_string(exp_want));
                return false;
            }
            // The linear law is re-derived with 128-bit arithmetic.
            __int128 lin_want = static_cast<__int128>(base) + static_cast<__int128>(factor) * d;
            std::int64_t lin_got = linear_interval_ms(base, factor, d);
            if (static_cast<__int128>(lin_got) != lin_want) {
                notes.push_back("linear(" + std::to_string(base) + "," + std::to_string(factor) +
                                "," + std::to_string(d) + ") diverged");
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_haversine(Notes& notes) {
    // Frozen from an independent high-precision evaluation of the great
    // circle formula; checked to 0.1 percent.
    const double kOneDegreeEquator = 111194.92664455874;
    const double kBnaToLax = 2886444.4428379833;

    double one_deg = haversine_m(0.0, 0.0, 0.0, 1.0);
    double bna_lax = haversine_m(36.12, -86.67, 33.94, -118.40);
    bool ok = true;
    if (std::fabs(one_deg - kOneDegreeEquator) > 1e-3 * kOneDegreeEquator) {
        notes.push_back("one equatorial degree measured " + fmt("%.6f", one_deg));
        ok = false;
    }
    if (std::fabs(bna_lax - kBnaToLax) > 1e-3 * kBnaToLax) {
        notes.push_back("reference city pair measured " + fmt("%.6f", bna_lax));
        ok = false;
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_conservation(Notes& notes) {
    PolicyModel model;
    if (!load_corpus_model("three_band.egen", model, notes)) return false;

    std::mt19937_64 rng(987654321);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() % 1000000) / 1000000.0);
    };

    for (int i = 0; i < 100; ++i) {
        TrackKind kind = i % 3 == 0   ? TrackKind::Line
                         : i % 3 == 1 ? TrackKind::Arc
                                      : TrackKind::Sinusoid;
        Trajectory traj =
            synth_track(kind, uniform(300.0, 4000.0), uniform(1.0, 12.0), i % 2 ? 1.0 : 2.0);
        DeviceProfile profile;
        profile.capacity_mah = uniform(500.0, 4000.0);
        profile.baseline_current_ma = uniform(20.0, 150.0);
        profile.gps_current_ma = uniform(50.0, 300.0);
        profile.fix_acquisition_s = uniform(0.3, 2.0);

        SimConfig cfg;
        cfg.initial_battery_percent = uniform(5.0, 100.0);
        if (i % 2 == 0)
            cfg.policy = FixedInterval{300 + static_cast<std::int64_t>(rng() % 20000)};
        else
            cfg.policy = model;

        SimResult r = simulate(traj, profile, cfg);
        double closed_form = profile.baseline_current_ma * r.duration_s / 3600.0 +
                             profile.gps_current_ma * r.gps_active_s / 3600.0;
        double tol = 1e-9 * std::max(1.0, std::fabs(closed_form));
        if (std::fabs(r.battery_consumed_mah - closed_form) > tol) {
            notes.push_back("energy identity broke on config #" + std::to_string(i) +
                            " by " + fmt("%.3e", r.battery_consumed_mah - closed_form));
            return false;
        }
    }

    for (TrackKind kind : {TrackKind::Line, TrackKind::Arc}) {
        Trajectory traj = synth_track(kind, 3060.0, 5.0, 1.0);
        std::int64_t prev_fixes = std::numeric_limits<std::int64_t>::max();
        double prev_per_hour = 1e300;
        double prev_mah = 1e300;
        for (std::int64_t ms = 1000; ms <= 10000; ms += 1000) {
            SimConfig cfg;
            cfg.policy = FixedInterval{ms};
            SimResult r = simulate(traj, DeviceProfile{}, cfg);
            if (r.fixes_taken > prev_fixes || r.gps_active_s_per_hour > prev_per_hour ||
                r.battery_consumed_mah > prev_mah) {
                notes.push_back("monotonicity broke at fixed " + std::to_string(ms) + " ms");
                return false;
            }
            prev_fixes = r.fixes_taken;
            prev_per_hour = r.gps_active_s_per_hour;
            prev_mah = r.battery_consumed_mah;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_tradeoff(Notes& notes) {
    PolicyModel model;
    if (!load_corpus_model("three_band.egen", model, notes)) return false;

    Trajectory traj = synth_track(TrackKind::Arc, 3060.0, 5.0, 1.0);
    SimConfig base;
    base.initial_battery_percent = 60.0;
    base.charging = false;
    base.foreground = true;
    ComparisonReport rep = compare(traj, DeviceProfile{}, model, 3000, base);

    bool ok = true;
    if (!(rep.gps_reduction_s_per_hour > 0.0)) {
        notes.push_back("gps_reduction_s_per_hour = " + fmt("%.6f", rep.gps_reduction_s_per_hour));
        ok = false;
    }
    if (!(rep.energy_savings_ma > 0.0)) {
        notes.push_back("energy_savings_ma = " + fmt("%.6f", rep.energy_savings_ma));
        ok = false;
    }
    double limit = 0.05 * rep.fixed.true_distance_m;
    if (!(rep.accuracy_degrade_m <= limit)) {
        notes.push_back("accuracy_degrade_m = " + fmt("%.3f", rep.accuracy_degrade_m) +
                        " exceeds " + fmt("%.3f", limit));
        ok = false;
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 8

struct JavaModel {
    long long fallback_ms = 0;
    long long cap_ms = 0;
    PolicyModel model;
};

bool extract_java(const std::string& java, JavaModel& out) {
    std::smatch m;
    int th = 0;
    int tm = 0;
    if (!std::regex_search(java, m, std::regex(R"(THRESHOLD_HIGH = (\d+);)"))) return false;
    th = std::stoi(m[1]);
    if (!std::regex_search(java, m, std::regex(R"(THRESHOLD_MEDIUM = (\d+);)"))) return false;
    tm = std::stoi(m[1]);
    if (!std::regex_search(java, m, std::regex(R"(FALLBACK_INTERVAL_MS = (\d+)L;)"))) return false;
    out.fallback_ms = std::stoll(m[1]);
    if (!std::regex_search(java, m, std::regex(R"(MAX_INTERVAL_MS = (\d+)L;)"))) return false;
    out.cap_ms = std::stoll(m[1]);

    std::regex policy_re(
        R"(// AdaptationPolicy (\d+): BatteryState=(\w+) BatteryLevel=(\w+) AppState=(\w+)\n)"
        R"(    private static long adaptationPolicy\d+\(int drops\) \{\n)"
        R"(        return (linear|exponential)\((\d+)L, (\d+)L, drops\);)");
    for (auto it = std::sregex_iterator(java.begin(), java.end(), policy_re);
         it != std::sregex_iterator(); ++it) {
        const std::smatch& pm = *it;
        AdaptationPolicy p;
        p.id.value = std::stoi(pm[1]);
        p.condition.battery_state =
            pm[2] == "Charging" ? BatteryState::Charging : BatteryState::Discharging;
        p.condition.battery_level = pm[3] == "High"     ? BatteryLevel::High
                                    : pm[3] == "Medium" ? BatteryLevel::Medium
                                                        : BatteryLevel::Low;
        p.condition.app_state = pm[4] == "Foreground" ? AppState::Foreground : AppState::Background;
        p.condition.threshold_high = th;
        p.condition.threshold_medium = tm;
        p.adaptation.function =
            pm[5] == "linear" ? BatteryAwareFunction::Linear : BatteryAwareFunction::Exponential;
        p.adaptation.sensing_interval_ms = std::stoi(pm[6]);
        p.adaptation.decreasing_factor = std::stoi(pm[7]);
        out.model.policies.push_back(std::move(p));
    }
    return !out.model.policies.empty();
}

bool criterion_codegen(Notes& notes) {
    bool all_ok = true;
    for (const std::string& stem : {std::string("reference"), std::string("three_band")}) {
        PolicyModel model;
        if (!load_corpus_model(stem + ".egen", model, notes)) return false;
        GenResult gen = generate(model, GenOptions{});
        if (!gen.ok() || gen.files.size() != 4) {
            notes.push_back(stem + ": generation failed");
            return false;
        }

        const std::string* utility = nullptr;
        for (const GeneratedFile& f : gen.files) {
            std::string name = f.relative_path.substr(f.relative_path.rfind('/') + 1);
            std::string golden = testsupport::slurp(testsupport::golden(stem + "/" + name));
            if (f.contents != golden) {
                notes.push_back(stem + "/" + name + " differs from its golden copy");
                all_ok = false;
            }
            if (name == "AdaptationUtility.java") utility = &f.contents;
        }
        if (utility == nullptr) {
            notes.push_back(stem + ": AdaptationUtility.java missing");
            return false;
        }

        JavaModel embedded;
        if (!extract_java(*utility, embedded)) {
            notes.push_back(stem + ": could not read constants back out of the Java text");
            return false;
        }
        for (bool charging : {false, true}) {
            for (bool foreground : {false, true}) {
                for (int pct = 0; pct <= 100; ++pct) {
                    DeviceContext ctx{pct, charging, foreground};
                    std::int64_t want =
                        compute_interval(model, ctx, embedded.fallback_ms, embedded.cap_ms)
                            .interval_ms;
                    std::int64_t got =
                        compute_interval(embedded.model, ctx, embedded.fallback_ms,
                                         embedded.cap_ms)
                            .interval_ms;
                    if (want != got) {
                        notes.push_back(stem + ": embedded constants diverge at " +
                                        std::to_string(pct) + "%");
                        return false;
                    }
                }
            }
        }
    }
    return all_ok;
}

struct Criterion {
    int number;
    const char* label;
    double budget_s; // 0 means no runtime bound
    std::function<bool(Notes&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "reference policy parses exactly; negative corpus hits its codes", 1.0,
         criterion_grammar},
        {2, "200 random models survive pretty-print round trips", 5.0, criterion_roundtrip},
        {3, "interval table shows banded shape with slopes 10/20/30", 0.0, criterion_table_shape},
        {4, "growth curves match an independent bignum oracle for drops 0..100", 0.0,
         criterion_curve_oracle},
        {5, "haversine reproduces frozen reference distances within 0.1%", 0.0,
         criterion_haversine},
        {6, "energy identity holds to 1e-9; slower sampling never costs more", 0.0,
         criterion_conservation},
        {7, "adaptive set beats fixed 3000 ms at bounded accuracy cost", 5.0, criterion_tradeoff},
        {8, "generated Java matches goldens and re-derives engine decisions", 0.0,
         criterion_codegen},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Notes notes;
        auto start = std::chrono::steady_clock::now();
        bool ok = c.run(notes);
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        if (ok && c.budget_s > 0.0 && elapsed > c.budget_s) {
            ok = false;
            notes.push_back("exceeded the " + fmt("%.0f", c.budget_s) + " s runtime bound");
        }
        std::printf("[%s] criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL", c.number, c.label,
                    elapsed);
        for (const std::string& note : notes) std::printf("       - %s\n", note.c_str());
        if (!ok) ++failures;
    }

    std::printf("acceptance: %d/%zu criteria passed\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
