#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "semmut/bundle.hpp"

namespace fs = std::filesystem;
using namespace semmut;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMissing = 3;
constexpr int kExitMismatch = 4;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::ConfigInvalid:
        case ErrorKind::ConfigIncomplete:
            return kExitConfig;
        case ErrorKind::ResultsMissing:
        case ErrorKind::MissingInput:
            return kExitMissing;
        case ErrorKind::MismatchDetected:
        case ErrorKind::TrivialisationViolated:
            return kExitMismatch;
        default:
            return kExitOther;
    }
}

void log(const std::string& msg) { std::cerr << "[semmut] " << msg << '\n'; }

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<long long> keq;
    std::optional<int> replicates;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    int workers = 1;
};

int cmd_run(const RunArgs& a) {
    CampaignConfig cfg = a.config.empty() ? CampaignConfig{} : load_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    if (a.keq) {
        if (*a.keq < 1) fail(ErrorKind::ConfigInvalid, "--keq must be >= 1");
        cfg.k_eq = static_cast<std::size_t>(*a.keq);
    }
    if (a.replicates) cfg.replicates = *a.replicates;
    if (a.mode) {
        auto m = parse_equivalence_mode(*a.mode);
        if (!m) fail(ErrorKind::ConfigInvalid, "unknown --mode " + *a.mode);
        cfg.equivalence_mode = *m;
    }
    if (a.out) cfg.output_directory = *a.out;
    cfg.validate();
    if (a.workers < 1) fail(ErrorKind::ConfigInvalid, "--workers must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    log("campaign: 12 PUTs x 5 MPs, k_eq " + std::to_string(cfg.k_eq) + ", replicates " +
        std::to_string(cfg.replicates) + ", seed " + std::to_string(cfg.seed));
    CampaignResult result = run_campaign(cfg.engine(a.workers), cfg.seed);
    log("lrca: assumption baselines and annotation");
    auto baselines = assumption_baselines(cfg.seed, cfg.lrca.replicates, a.workers);
    annotate(result, baselines, cfg.lrca);
    CalibrationReport calibration = calibrate(result, baselines, cfg.lrca);
    log("stats");
    StatsReport stats = build_stats_report(result, cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir = cfg.output_directory;
    write_json_atomic(dir / "campaign_results.json", campaign_json(result, cfg));
    write_json_atomic(dir / "lrca_report.json", lrca_json(result, baselines, calibration, cfg));
    write_json_atomic(dir / "stats_report.json", stats_json(stats, cfg));
    write_json_atomic(dir / "mutant_manifest.json", mutant_manifest());
    write_json_atomic(dir / "mr_manifest.json", mr_manifest());
    json meta{{"tool", kToolName}, {"version", kToolVersion},   {"finished_utc", utc_now()},
              {"workers", a.workers}, {"elapsed_seconds", elapsed}, {"config", to_json(cfg)}};
    write_json_atomic(dir / "run_metadata.json", meta);
    log("wrote results to " + dir.string() + " in " + std::to_string(static_cast<int>(std::round(elapsed))) + " s");
    return 0;
}

int cmd_stats(const std::string& in) {
    const fs::path dir = in;
    json campaign = read_json(dir / "campaign_results.json");
    CampaignConfig cfg = config_of(campaign);
    CampaignResult result = campaign_from_json(campaign);
    StatsReport stats = build_stats_report(result, cfg);
    if (stats.cells != static_cast<int>(result.cells.size()))
        fail(ErrorKind::IncompleteInput, "stats cell count differs from the campaign file");
    write_json_atomic(dir / "stats_report.json", stats_json(stats, cfg));
    log("wrote " + (dir / "stats_report.json").string());
    return 0;
}

int cmd_power(const std::string& in, const std::string& mode, double target, int n_sim,
              std::optional<std::uint64_t> seed) {
    const fs::path dir = in;
    json campaign = read_json(dir / "campaign_results.json");
    CampaignConfig cfg = config_of(campaign);
    CampaignResult result = campaign_from_json(campaign);
    std::vector<double> aligned, cross;
    for (const auto& c : result.cells)
        if (c.sms) (c.aligned ? aligned : cross).push_back(*c.sms);
    if (aligned.empty() || cross.empty()) fail(ErrorKind::IncompleteInput, "aligned or cross slice is empty");
    const std::uint64_t s = seed.value_or(42);
    PowerReport p = mode == "plugin" ? power_plugin(aligned, cross, kRomanoThresholds, n_sim, s)
                                     : power_stipulated(aligned, cross, target, n_sim, s);
    write_json_atomic(dir / "power_report.json", power_json(p, cfg));
    log("wrote " + (dir / "power_report.json").string());
    return 0;
}

int cmd_degenerate(std::uint64_t seed, const std::string& out, bool corrupt) {
    DegenerateLimitConfig cfg;
    SmsFormula formula = compute_sms;
    // Negative control: shift the score by one ulp.
    if (corrupt) formula = [](int inst, int eq, int killed) { return std::nextafter(compute_sms(inst, eq, killed), 2.0); };
    std::vector<DegenerationReport> reports;
    std::vector<std::string> failures;
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) {
        const auto start = std::chrono::steady_clock::now();
        try {
            auto mutants = syntactic_mutants(p);
            reports.push_back(check_degeneration(p, mutants, cfg, seed, formula));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const auto& r = reports.back();
            std::cout << to_string(p) << ": SMS = MS, equivalent " << r.equiv_sms << ", killed " << r.killed_sms
                      << " of " << r.mutants << ", all kills C1 (" << std::fixed << std::setprecision(1) << secs
                      << " s)\n";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MismatchDetected && e.kind() != ErrorKind::TrivialisationViolated) throw;
            failures.push_back(e.what());
            std::cout << e.what() << '\n';
        }
    }
    json j = degeneration_json(reports, cfg, seed);
    json f = json::array();
    for (const auto& s : failures) f.push_back(s);
    j["failures"] = f;
    j["all_equal"] = failures.empty() && j["all_equal"].get<bool>();
    write_json_atomic(fs::path(out) / "degeneration_report.json", j);
    return failures.empty() ? 0 : kExitMismatch;
}

int cmd_report(const std::string& in) {
    const fs::path dir = in;
    json campaign = read_json(dir / "campaign_results.json");
    CampaignResult result = campaign_from_json(campaign);
    json stats;
    if (fs::exists(dir / "stats_report.json")) {
        stats = read_json(dir / "stats_report.json");
    } else {
        CampaignConfig cfg = config_of(campaign);
        stats = stats_json(build_stats_report(result, cfg), cfg);
    }
    std::cout << render_report(result, stats);
    write_text_atomic(dir / "sms_heatmap.csv", heatmap_csv(result));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic mutation adequacy harness for scientific kernels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run the campaign, LRCA and statistics; write the result bundle");
    run_cmd->add_option("--config", run.config, "Campaign config (JSON)");
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--keq", run.keq, "E2 sample size");
    run_cmd->add_option("--replicates", run.replicates, "Statistical replicates per mutant");
    run_cmd->add_option("--mode", run.mode, "Equivalence mode")->check(CLI::IsMember({"e1e2", "e1", "e2"}));
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);

    std::string stats_in;
    auto* stats_cmd = app.add_subcommand("stats", "Recompute stats_report.json from campaign_results.json");
    stats_cmd->add_option("--in", stats_in, "Result directory")->required();

    std::string power_in, power_mode = "plugin";
    double target = 0.4746;
    int n_sim = 5000;
    std::optional<std::uint64_t> power_seed;
    auto* power_cmd = app.add_subcommand("power", "Power analysis over the aligned and cross SMS slices");
    power_cmd->add_option("--in", power_in, "Result directory")->required();
    power_cmd->add_option("--mode", power_mode, "plugin or stipulated")->check(CLI::IsMember({"plugin", "stipulated"}));
    power_cmd->add_option("--target", target, "Stipulated expected delta");
    power_cmd->add_option("--nsim", n_sim, "Simulated replications")->check(CLI::PositiveNumber);
    power_cmd->add_option("--seed", power_seed, "Simulation seed (default 42)");

    std::uint64_t deg_seed = 42;
    std::string deg_out = ".";
    bool corrupt = false;
    auto* deg_cmd = app.add_subcommand("degenerate-check", "Check SMS = MS on A1-A3 under the degenerate limit");
    deg_cmd->add_option("--seed", deg_seed, "Sample-stream seed");
    deg_cmd->add_option("--out", deg_out, "Directory for degeneration_report.json");
    deg_cmd->add_flag("--corrupt-sms-formula", corrupt)->group("");

    std::string report_in;
    auto* report_cmd = app.add_subcommand("report", "Print the heatmap, class marginals and verdicts");
    report_cmd->add_option("--in", report_in, "Result directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*stats_cmd) return cmd_stats(stats_in);
        if (*power_cmd) return cmd_power(power_in, power_mode, target, n_sim, power_seed);
        if (*deg_cmd) return cmd_degenerate(deg_seed, deg_out, corrupt);
        if (*report_cmd) return cmd_report(report_in);
    } catch (const Error& e) {
        std::cerr << "semmut: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "semmut: " << e.what() << '\n';
        return kExitOther;
    }
    return kExitOther;
}
