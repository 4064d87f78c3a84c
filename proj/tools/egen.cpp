/// egen command line: check, table, generate, simulate, compare.
///
/// Exit codes: 0 success, 1 invalid model or inputs, 2 I/O failure,
/// 3 generate would overwrite without --force, 4 simulated battery
/// exhaustion. Reports go to stdout, diagnostics to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "egen/codegen.hpp"
#include "egen/engine.hpp"
#include "egen/parser.hpp"
#include "egen/simulate.hpp"
#include "egen/trajectory.hpp"
#include "egen/validator.hpp"

namespace {

constexpr const char* kVersion = "egen 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitWouldOverwrite = 3;
constexpr int kExitExhausted = 4;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

void print_diagnostics(const std::vector<egen::Diagnostic>& diags, const std::string& file) {
    for (const egen::Diagnostic& d : diags) std::cerr << egen::render(d, file) << '\n';
}

/// Parse + validate one policy file. Returns kExitOk/kExitInvalid/kExitIo
/// and fills `model` only on success.
int load_model(const std::string& path, egen::PolicyModel& model) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "egen: cannot read '" << path << "'\n";
        return kExitIo;
    }
    egen::ParseResult parsed = egen::parse(text, path);
    print_diagnostics(parsed.diagnostics, path);
    if (!parsed.ok()) return kExitInvalid;

    std::vector<egen::Diagnostic> findings = egen::validate(parsed.model);
    print_diagnostics(findings, path);
    if (egen::has_errors(findings)) return kExitInvalid;

    model = std::move(parsed.model);
    return kExitOk;
}

struct TableArgs {
    std::string file;
    bool charging = false;
    bool background = false;
    std::int64_t fallback_ms = egen::kDefaultFallbackMs;
    std::int64_t cap_ms = egen::kDefaultCapMs;
    std::string format = "csv";
};

int cmd_table(const TableArgs& args) {
    egen::PolicyModel model;
    if (int rc = load_model(args.file, model); rc != kExitOk) return rc;

    auto rows = egen::interval_table(model, args.charging, !args.background, args.fallback_ms,
                                     args.cap_ms);
    std::cout << (args.format == "json" ? egen::interval_table_json(rows)
                                        : egen::interval_table_csv(rows));
    return kExitOk;
}

struct GenerateArgs {
    std::string file;
    std::string out_dir;
    std::string package_name = "com.example.app";
    bool force = false;
    bool emit_policy_table = false;
    std::int64_t fallback_ms = egen::kDefaultFallbackMs;
    std::int64_t cap_ms = egen::kDefaultCapMs;
};

int cmd_generate(const GenerateArgs& args) {
    egen::PolicyModel model;
    if (int rc = load_model(args.file, model); rc != kExitOk) return rc;

    egen::GenOptions options;
    options.package_name = args.package_name;
    options.fallback_ms = args.fallback_ms;
    options.cap_ms = args.cap_ms;

    egen::GenResult gen = egen::generate(model, options);
    print_diagnostics(gen.diagnostics, args.file);
    if (!gen.ok()) return kExitInvalid;

    namespace fs = std::filesystem;
    const fs::path root(args.out_dir);

    std::vector<std::pair<fs::path, const std::string*>> outputs;
    for (const egen::GeneratedFile& f : gen.files)
        outputs.emplace_back(root / f.relative_path, &f.contents);

    std::string table_text;
    if (args.emit_policy_table) {
        auto rows = egen::interval_table(model, false, true, args.fallback_ms, args.cap_ms);
        table_text = egen::interval_table_csv(rows);
        fs::path dir = outputs.front().first.parent_path();
        outputs.emplace_back(dir / "policy_table.csv", &table_text);
    }

    if (!args.force) {
        for (const auto& [path, contents] : outputs) {
            if (fs::exists(path)) {
                std::cerr << "egen: refusing to overwrite '" << path.string()
                          << "' (pass --force to allow)\n";
                return kExitWouldOverwrite;
            }
        }
    }

    for (const auto& [path, contents] : outputs) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            std::cerr << "egen: cannot create '" << path.parent_path().string()
                      << "': " << ec.message() << '\n';
            return kExitIo;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << *contents)) {
            std::cerr << "egen: cannot write '" << path.string() << "'\n";
            return kExitIo;
        }
        std::cout << path.string() << '\n';
    }
    return kExitOk;
}

struct SimArgs {
    std::string model_file;
    std::int64_t fixed_ms = 0; // 0 means unset
    std::string track_file;
    std::string synth_spec;
    std::string profile_file;
    int start_percent = 100;
    bool charging = false;
    bool background = false;
    std::int64_t fallback_ms = egen::kDefaultFallbackMs;
    std::int64_t cap_ms = egen::kDefaultCapMs;
    int trials = 1;
    bool json = false;
};

int build_trajectory(const SimArgs& args, egen::Trajectory& traj) {
    if (!args.track_file.empty()) {
        if (!std::filesystem::exists(args.track_file)) {
            std::cerr << "egen: cannot read '" << args.track_file << "'\n";
            return kExitIo;
        }
        if (auto err = egen::load_trajectory(args.track_file, traj)) {
            std::cerr << "egen: " << args.track_file << ": " << *err << '\n';
            return kExitInvalid;
        }
        return kExitOk;
    }
    egen::SynthSpec spec;
    if (auto err = egen::parse_synth_spec(args.synth_spec, spec)) {
        std::cerr << "egen: --synth: " << *err << '\n';
        return kExitInvalid;
    }
    traj = egen::synth_track(spec.kind, spec.length_m, spec.speed_mps, spec.sample_hz);
    return kExitOk;
}

int build_profile(const SimArgs& args, egen::DeviceProfile& profile) {
    if (args.profile_file.empty()) return kExitOk;
    if (!std::filesystem::exists(args.profile_file)) {
        std::cerr << "egen: cannot read '" << args.profile_file << "'\n";
        return kExitIo;
    }
    if (auto err = egen::load_profile(args.profile_file, profile)) {
        std::cerr << "egen: " << args.profile_file << ": " << *err << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

nlohmann::json mean_of_runs(const std::vector<nlohmann::json>& runs) {
    nlohmann::json mean = runs.front();
    std::function<void(nlohmann::json&, const std::string&)> walk =
        [&](nlohmann::json& node, const std::string& path) {
            if (node.is_object()) {
                for (auto& [key, value] : node.items()) walk(value, path + "/" + key);
            } else if (node.is_number()) {
                double sum = 0.0;
                for (const nlohmann::json& run : runs)
                    sum += run.at(nlohmann::json::json_pointer(path)).get<double>();
                node = sum / static_cast<double>(runs.size());
            }
        };
    walk(mean, "");
    return mean;
}

void print_sim_human(const egen::SimResult& r, const std::string& arm,
                     const egen::Trajectory& traj) {
    std::printf("arm                      %s\n", arm.c_str());
    std::printf("trajectory               %s (%zu points)\n", traj.name.c_str(),
                traj.points.size());
    std::printf("duration_s               %.3f\n", r.duration_s);
    std::printf("fixes_taken              %lld\n", static_cast<long long>(r.fixes_taken));
    std::printf("gps_active_s             %.3f\n", r.gps_active_s);
    std::printf("gps_active_s_per_hour    %.3f\n", r.gps_active_s_per_hour);
    std::printf("battery_consumed_mah     %.6f\n", r.battery_consumed_mah);
    std::printf("battery_consumed_ma      %.3f\n", r.battery_consumed_ma);
    std::printf("final_battery_percent    %.3f\n", r.final_battery_percent);
    std::printf("measured_distance_m      %.3f\n", r.measured_distance_m);
    std::printf("true_distance_m          %.3f\n", r.true_distance_m);
    std::printf("accuracy_error_m         %.3f\n", r.accuracy_error_m);
    std::printf("battery_exhausted        %s\n", r.battery_exhausted ? "yes" : "no");
}

int report_trials(int trials, bool json, const nlohmann::json& run_json,
                  const std::function<void()>& print_human) {
    if (json) {
        if (trials == 1) {
            std::cout << run_json.dump(2) << '\n';
        } else {
            std::vector<nlohmann::json> runs(static_cast<std::size_t>(trials), run_json);
            nlohmann::json out;
            out["trials"] = trials;
            out["mean"] = mean_of_runs(runs);
            out["runs"] = runs;
            std::cout << out.dump(2) << '\n';
        }
    } else {
        print_human();
        if (trials > 1)
            std::printf("trials                   %d (deterministic; runs identical)\n", trials);
    }
    return kExitOk;
}

int cmd_simulate(const SimArgs& args, bool has_model, bool has_fixed) {
    if (has_model == has_fixed) {
        std::cerr << "egen: simulate needs a policy file or --fixed MS, not both\n";
        return kExitInvalid;
    }
    if (args.track_file.empty() == args.synth_spec.empty()) {
        std::cerr << "egen: simulate needs exactly one of --track or --synth\n";
        return kExitInvalid;
    }

    egen::SimConfig cfg;
    std::string arm_label;
    if (has_model) {
        egen::PolicyModel model;
        if (int rc = load_model(args.model_file, model); rc != kExitOk) return rc;
        arm_label = "adaptive (" + args.model_file + ")";
        cfg.policy = std::move(model);
    } else {
        arm_label = "fixed " + std::to_string(args.fixed_ms) + " ms";
        cfg.policy = egen::FixedInterval{args.fixed_ms};
    }
    cfg.initial_battery_percent = args.start_percent;
    cfg.charging = args.charging;
    cfg.foreground = !args.background;
    cfg.fallback_ms = args.fallback_ms;
    cfg.cap_ms = args.cap_ms;

    egen::Trajectory traj;
    if (int rc = build_trajectory(args, traj); rc != kExitOk) return rc;
    egen::DeviceProfile profile;
    if (int rc = build_profile(args, profile); rc != kExitOk) return rc;

    egen::SimResult result = egen::simulate(traj, profile, cfg);
    nlohmann::json run = nlohmann::json::parse(egen::to_json(result, has_model ? "adaptive" : "fixed"));
    report_trials(args.trials, args.json, run,
                  [&] { print_sim_human(result, arm_label, traj); });

    if (result.battery_exhausted) {
        std::cerr << "egen: EGEN-S01: battery exhausted " << result.duration_s
                  << " s into the route; run truncated\n";
        return kExitExhausted;
    }
    return kExitOk;
}

int cmd_compare(const SimArgs& args) {
    if (args.track_file.empty() == args.synth_spec.empty()) {
        std::cerr << "egen: compare needs exactly one of --track or --synth\n";
        return kExitInvalid;
    }

    egen::PolicyModel model;
    if (int rc = load_model(args.model_file, model); rc != kExitOk) return rc;

    egen::SimConfig cfg;
    cfg.initial_battery_percent = args.start_percent;
    cfg.charging = args.charging;
    cfg.foreground = !args.background;
    cfg.fallback_ms = args.fallback_ms;
    cfg.cap_ms = args.cap_ms;

    egen::Trajectory traj;
    if (int rc = build_trajectory(args, traj); rc != kExitOk) return rc;
    egen::DeviceProfile profile;
    if (int rc = build_profile(args, profile); rc != kExitOk) return rc;

    egen::ComparisonReport report = egen::compare(traj, profile, model, args.fixed_ms, cfg);
    nlohmann::json run = nlohmann::json::parse(egen::to_json(report));
    report_trials(args.trials, args.json, run, [&] {
        std::printf("trajectory               %s (%zu points, true length %.1f m)\n",
                    traj.name.c_str(), traj.points.size(), report.fixed.true_distance_m);
        std::printf("%-24s %14s %14s %14s\n", "metric", "fixed", "adaptive", "delta");
        std::printf("%-24s %14lld %14lld\n", "fixes_taken",
                    static_cast<long long>(report.fixed.fixes_taken),
                    static_cast<long long>(report.adaptive.fixes_taken));
        std::printf("%-24s %14.3f %14.3f %14.3f\n", "gps_active_s_per_hour",
                    report.fixed.gps_active_s_per_hour, report.adaptive.gps_active_s_per_hour,
                    report.gps_reduction_s_per_hour);
        std::printf("%-24s %14.3f %14.3f %14.3f\n", "battery_consumed_ma",
                    report.fixed.battery_consumed_ma, report.adaptive.battery_consumed_ma,
                    report.energy_savings_ma);
        std::printf("%-24s %14.3f %14.3f %14.3f\n", "accuracy_error_m",
                    report.fixed.accuracy_error_m, report.adaptive.accuracy_error_m,
                    report.accuracy_degrade_m);
    });

    if (report.adaptive.battery_exhausted || report.fixed.battery_exhausted) {
        std::cerr << "egen: EGEN-S01: battery exhausted mid-route in at least one arm\n";
        return kExitExhausted;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery-aware location-sensing policy toolchain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // check
    std::vector<std::string> check_files;
    CLI::App* check = app.add_subcommand("check", "Parse and validate policy files");
    check->add_option("files", check_files, "Policy files (.egen)")->required();

    // table
    TableArgs table_args;
    CLI::App* table = app.add_subcommand("table", "Print the 101-row percent/interval table");
    table->add_option("file", table_args.file, "Policy file")->required();
    table->add_flag("--charging", table_args.charging, "Assume the battery is charging");
    table->add_flag("--background", table_args.background, "Assume the app is in background");
    table->add_option("--fallback", table_args.fallback_ms, "Fallback interval ms")
        ->check(CLI::PositiveNumber);
    table->add_option("--cap", table_args.cap_ms, "Interval cap ms")->check(CLI::PositiveNumber);
    table->add_option("--format", table_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // generate
    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "Generate the Java sources");
    generate->add_option("file", gen_args.file, "Policy file")->required();
    generate->add_option("--out", gen_args.out_dir, "Output directory")->required();
    generate->add_option("--package", gen_args.package_name, "Java package name");
    generate->add_flag("--force", gen_args.force, "Overwrite existing files");
    generate->add_flag("--emit-policy-table", gen_args.emit_policy_table,
                       "Also write policy_table.csv");
    generate->add_option("--fallback", gen_args.fallback_ms, "Fallback interval ms")
        ->check(CLI::PositiveNumber);
    generate->add_option("--cap", gen_args.cap_ms, "Interval cap ms")->check(CLI::PositiveNumber);

    // simulate / compare share most knobs
    SimArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Simulate sensing over a trajectory");
    CLI::Option* sim_model = simulate->add_option("file", sim_args.model_file, "Policy file");
    CLI::Option* sim_fixed = simulate
                                 ->add_option("--fixed", sim_args.fixed_ms,
                                              "Constant sensing interval ms instead of a model")
                                 ->check(CLI::PositiveNumber);
    auto add_sim_knobs = [](CLI::App* cmd, SimArgs& a) {
        cmd->add_option("--track", a.track_file, "Trajectory file (CSV lat,lon,t_s or GPX)");
        cmd->add_option("--synth", a.synth_spec, "Synthetic track kind:length_m:speed_mps[:hz]");
        cmd->add_option("--profile", a.profile_file, "Device profile key=value file");
        cmd->add_option("--start", a.start_percent, "Initial battery percent")
            ->check(CLI::Range(0, 100));
        cmd->add_flag("--charging", a.charging, "Battery is charging");
        cmd->add_flag("--background", a.background, "App is in background");
        cmd->add_option("--fallback", a.fallback_ms, "Fallback interval ms")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cap", a.cap_ms, "Interval cap ms")->check(CLI::PositiveNumber);
        cmd->add_option("--trials", a.trials, "Repeat the run N times and report the mean")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--json", a.json, "Emit a JSON report");
    };
    add_sim_knobs(simulate, sim_args);

    SimArgs cmp_args;
    CLI::App* compare = app.add_subcommand("compare", "Adaptive vs fixed-interval comparison");
    compare->add_option("file", cmp_args.model_file, "Policy file")->required();
    compare->add_option("--fixed", cmp_args.fixed_ms, "Fixed-arm sensing interval ms")
        ->required()
        ->check(CLI::PositiveNumber);
    add_sim_knobs(compare, cmp_args);

    for (CLI::App* sub : {check, table, generate, simulate, compare})
        sub->set_version_flag("--version", kVersion);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*check) {
        int worst = kExitOk;
        for (const std::string& path : check_files) {
            egen::PolicyModel model;
            int rc = load_model(path, model);
            if (rc == kExitIo) worst = kExitIo;
            else if (rc != kExitOk && worst != kExitIo) worst = std::max(worst, rc);
        }
        return worst;
    }
    if (*table) return cmd_table(table_args);
    if (*generate) return cmd_generate(gen_args);
    if (*simulate) return cmd_simulate(sim_args, sim_model->count() > 0, sim_fixed->count() > 0);
    if (*compare) return cmd_compare(cmp_args);
    return kExitOk;
}
