#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semmut/adequacy.hpp"

namespace semmut {

struct LrcaConfig {
    double fail_ratio_cutoff = 0.80;
    double ood_band = 0.02;
    double tolerance_multiplier = 3.0;
    int replicates = 20;

    // ConfigInvalid unless cutoff in (0, 1], band one of kOodBands,
    // multiplier > 0 and replicates >= 1.
    void validate() const;
};

inline constexpr double kToleranceMultipliers[] = {3.0, 10.0, 30.0};

// Assumption pre-check inputs, measured on the unmutated PUT.
struct AssumptionBaseline {
    PutId put = PutId::A1;
    // Lag-1 rank autocorrelation of repeated samples at the domain midpoint;
    // unset when the samples are constant.
    std::optional<double> lag1_autocorrelation;
    // Half-to-half drift of per-replicate trajectory means and their
    // spread; unset for PUTs without trajectories.
    std::optional<double> trajectory_drift;
    double trajectory_spread = 0.0;
};

AssumptionBaseline assumption_baseline(PutId put, std::uint64_t seed, int replicates = 20);
std::vector<AssumptionBaseline> assumption_baselines(std::uint64_t seed, int replicates = 20, int workers = 1);

inline constexpr double kIidAutocorrelationLimit = 0.5;
inline constexpr int kOverInjectionLimit = 3;

bool iid_violated(const AssumptionBaseline& b);
bool stationarity_violated(const AssumptionBaseline& b, double tolerance_multiplier);

struct KillEvidence {
    PutId put = PutId::A1;
    double fail_ratio = 1.0;
    std::vector<VerificationMethod> methods;              // of the MRs that killed
    std::vector<std::pair<double, bool>> in_band_killed;  // per OOD band
    bool artefact_flag = false;
    int changed_parameters = 1;
    std::optional<AssumptionBaseline> baseline;
};

KillEvidence evidence_of(const MutantOutcome& m, PutId put, const AssumptionBaseline* baseline);

struct LrcaAnnotation {
    std::string mutant_id;
    RootCause root_cause = RootCause::C1;
    std::vector<RootCause> co_occurring;  // ascending; {C1} when nothing else fired
    std::string evidence;
};

// Highest-priority member of causes plus C1.
RootCause resolve_priority(std::span<const RootCause> causes);

// L1 fail-ratio stability, L2 OOD confinement (classes C and D), L3
// assumption pre-check (classes B and D, Wilcoxon or DTW kills), artefact
// recheck. MissingEvidence when a layer that applies lacks its input.
LrcaAnnotation diagnose(const std::string& mutant_id, const KillEvidence& ev, const LrcaConfig& cfg);

struct Shares {
    double c1_share = 0.0;
    double suspect_share = 0.0;
};

// NoKills when the cell has no killed mutant.
Shares shares(const CellResult& cell);

// Labels every killed mutant and sets the cell shares; counts and SMS are
// left untouched.
void annotate(CellResult& cell, std::span<const AssumptionBaseline> baselines, const LrcaConfig& cfg);
void annotate(CampaignResult& result, std::span<const AssumptionBaseline> baselines, const LrcaConfig& cfg);

struct CalibrationEntry {
    double ood_band = 0.0;
    double tolerance_multiplier = 0.0;
    std::optional<double> mean_c1_share;  // over cells with defined shares
    int cells_low_suspect = 0;            // suspect_share <= 0.20
    int cells_with_shares = 0;
    bool best = false;
};

struct CalibrationReport {
    std::vector<CalibrationEntry> entries;
    std::size_t best_index = 0;
    double reference_ood_band = 0.02;  // combination reported as primary in the source study
    double reference_tolerance_multiplier = 3.0;
};

inline constexpr double kLowSuspectShare = 0.20;

// Relabels the pooled cells under every grid combination. Best: most
// low-suspect cells, then highest mean C1 share, then grid order.
CalibrationReport calibrate(const CampaignResult& result, std::span<const AssumptionBaseline> baselines,
                            const LrcaConfig& base, std::span<const double> bands = kOodBands,
                            std::span<const double> multipliers = kToleranceMultipliers);

struct CutoffRow {
    double cutoff = 0.0;
    int count = 0;  // cells with suspect_share <= cutoff
    double ratio = 0.0;
};

// Cells without shares are skipped. InvalidArgument on empty cutoffs.
std::vector<CutoffRow> h4_cutoff_sweep(std::span<const CellResult> cells, std::span<const double> cutoffs);

// 0.05, 0.10, ..., 0.50
std::vector<double> default_h4_cutoffs();

}  // namespace semmut
