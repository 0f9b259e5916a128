#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "semmut/adequacy.hpp"
#include "semmut/degeneration.hpp"
#include "semmut/lrca.hpp"
#include "semmut/stats.hpp"

namespace semmut {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "semmut";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kHeadlineBootstrap = 10000;

struct CampaignConfig {
    std::uint64_t seed = 42;
    std::size_t k_eq = 1000;
    int replicates = 20;
    double eps_eq = 1e-6;
    EquivalenceMode equivalence_mode = EquivalenceMode::E1_and_E2;
    int bootstrap_iterations = 1000;
    LrcaConfig lrca;
    std::string output_directory = "results";

    // ConfigInvalid; eps_eq must be positive outside the degenerate limit.
    void validate() const;
    EngineConfig engine(int workers) const;
};

json to_json(const CampaignConfig& c);
// Unknown keys and mistyped values are ConfigInvalid; absent keys keep
// their defaults.
CampaignConfig campaign_config_from_json(const json& j);
// MissingInput when the file does not exist.
CampaignConfig load_config(const std::filesystem::path& path);

// Finite numbers stay numbers; NaN -> "undefined", +-inf -> "infinite" /
// "-infinite"; an empty optional -> "undefined".
json number(double v);
json number(const std::optional<double>& v);
std::optional<double> number_from(const json& j);

json to_json(const CellResult& c);
CellResult cell_from_json(const json& j);

// campaign_results.json
json campaign_json(const CampaignResult& r, const CampaignConfig& cfg);
CampaignResult campaign_from_json(const json& j);
CampaignConfig config_of(const json& file);

struct ClassSlice {
    PutClass cls = PutClass::A;
    std::optional<double> aligned_mean;
    std::optional<double> cross_mean;
    std::optional<double> delta;
};

struct StatsReport {
    int cells = 0;
    int defined_cells = 0;
    int zero_cells = 0;
    double mean_sms = 0.0;
    double median_sms = 0.0;
    double sd_sms = 0.0;
    std::vector<double> aligned_sms, cross_sms;
    double delta = 0.0;
    ConfidenceInterval delta_ci;
    int bootstrap_iterations = kHeadlineBootstrap;
    EffectClass effect = EffectClass::negligible;
    OddsRatios odds;
    std::vector<ClassSlice> classes;
    SignTestResult sign;
    std::optional<double> cv;
    std::optional<FriedmanResult> friedman;         // PUT x MP, complete rows only
    std::vector<std::optional<FriedmanResult>> class_friedman;  // descriptive, per class
    std::vector<double> class_friedman_bonferroni;  // NaN where the class test is absent
    std::optional<CorrelationResult> coverage_correlation;  // pattern coverage vs mean SMS per PUT
    std::vector<std::string> fdr_labels;
    std::vector<double> fdr_pvalues;
    std::vector<bool> fdr_rejected;
    HypothesisInputs hypothesis_inputs;
    HypothesisVerdicts verdicts;
    std::vector<double> pattern_coverage;  // per PUT, A1..D3
    std::vector<CutoffRow> h4_sweep;
};

// Needs an annotated campaign.
StatsReport build_stats_report(const CampaignResult& r, const CampaignConfig& cfg);
json stats_json(const StatsReport& s, const CampaignConfig& cfg);

json lrca_json(const CampaignResult& r, std::span<const AssumptionBaseline> baselines,
               const CalibrationReport& calibration, const CampaignConfig& cfg);
json power_json(const PowerReport& p, const CampaignConfig& cfg);
json degeneration_json(std::span<const DegenerationReport> reports, const DegenerateLimitConfig& cfg,
                       std::uint64_t seed);
json mutant_manifest();
json mr_manifest();

// Writes to a sibling temporary file and renames it into place.
void write_json_atomic(const std::filesystem::path& path, const json& j);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
// ResultsMissing when absent or unreadable.
json read_json(const std::filesystem::path& path);

// 12 x 5 SMS matrix as CSV, "undefined" for undefined cells.
std::string heatmap_csv(const CampaignResult& r);
// Heatmap, class marginals, H1-H4 verdicts and pattern coverage.
std::string render_report(const CampaignResult& r, const json& stats);

}  // namespace semmut
