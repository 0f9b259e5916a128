#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semmut/avp.hpp"
#include "semmut/mr_catalog.hpp"
#include "semmut/mutation_catalog.hpp"
#include "semmut/program.hpp"
#include "semmut/types.hpp"

namespace semmut {

enum class EquivalenceMode { E1_and_E2, E1_only, E2_only };

std::string_view to_string(EquivalenceMode m);
// Accepts the canonical names and the CLI spellings e1e2 / e1 / e2.
std::optional<EquivalenceMode> parse_equivalence_mode(std::string_view s);

struct EquivalenceConfig {
    std::size_t k_eq = 1000;
    double eps_eq = 1e-6;  // 0 selects exact comparison (degenerate limit only)
    EquivalenceMode mode = EquivalenceMode::E1_and_E2;

    // ConfigInvalid unless k_eq >= 1 and eps_eq >= 0.
    void validate() const;
};

enum class MutantState { equivalent, killed, survived };
std::string_view to_string(MutantState s);
std::optional<MutantState> parse_mutant_state(std::string_view s);

// C5 > C4 > C3 > C2 > C1 in priority.
enum class RootCause { C1, C2, C3, C4, C5 };
std::string_view to_string(RootCause c);
std::optional<RootCause> parse_root_cause(std::string_view s);

// Common random numbers: both programs see stream_point(domain, seed, i).
// With eps_eq = 0 outputs must compare equal; NaN never does.
bool e2_output_equivalence(const Program& original, const Program& mutant, const EquivalenceConfig& cfg,
                           std::uint64_t seed);

bool e1_avp_coherence(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                      const MrContext& ctx);
bool e1_avp_coherence(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                      std::uint64_t seed);

// OR-aggregation: some MR passes on the original and fails on the mutant.
bool killed_determination(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                          const MrContext& ctx);
bool killed_determination(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                          std::uint64_t seed);

// E2 first, E1 only when E2 held (or was not required).
MutantState classify_mutant(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                            const EquivalenceConfig& cfg, std::uint64_t seed);

// killed / (inst - equiv); AllEquivalent when inst == equiv.
double compute_sms(int inst, int equiv, int killed);

// (1 - p)^k_eq: chance that k_eq draws all miss a disagreement region of
// measure p.
double false_equiv_bound(std::size_t k_eq, double p);

struct EngineConfig {
    EquivalenceConfig equivalence;
    int replicates = 20;
    int workers = 1;

    void validate() const;
};

// OOD bands for which the engine records in-band kill evidence.
inline constexpr double kOodBands[] = {0.02, 0.05, 0.10};

struct MutantOutcome {
    std::string id;
    OperatorClass op = OperatorClass::CE;
    MutantState state = MutantState::survived;
    double fail_ratio = 0.0;
    std::optional<bool> e2;  // unset when the mode skipped the condition
    std::optional<bool> e1;
    // Evidence for root-cause analysis, filled for killed mutants.
    std::vector<VerificationMethod> kill_methods;
    std::vector<std::pair<double, bool>> in_band_killed;  // (band, still killed with inputs kept out of the band)
    bool artefact_flag = false;
    int changed_parameters = 1;
    // Filled by root-cause analysis.
    std::optional<RootCause> root_cause;
    std::vector<RootCause> co_occurring;
};

struct CellResult {
    PutId put = PutId::A1;
    MetaPattern mp = MetaPattern::MP1;
    std::optional<OperatorClass> op;  // unset on the operator-pooled projection
    bool aligned = false;
    int pool_size = 0;  // authored mutants, before the prescreen
    int inst_count = 0;
    int equiv_count = 0;
    int killed_count = 0;
    int survive_count = 0;
    std::optional<double> sms;
    double inst_rate = 0.0;
    double equiv_rate = 0.0;
    double survive_rate = 0.0;
    std::optional<double> c1_share;
    std::optional<double> suspect_share;
    bool observed_pass = false;  // some MR verdict in the cell was pass / fail
    bool observed_fail = false;
    std::vector<MutantOutcome> per_mutant;
};

// Seeds for one (PUT, pattern) cell. The MR input sample is fixed across
// replicates; replicates differ only in the kernel seed.
struct CellSeeds {
    std::uint64_t e2 = 0;
    std::uint64_t sample = 0;
    std::vector<std::uint64_t> kernel;
};

CellSeeds cell_seeds(PutId put, MetaPattern mp, int replicates, std::uint64_t seed);

// Judges every mutant against one MR set. collapse_replicates evaluates
// replicate 0 only and copies it, valid when neither program reads the seed.
std::vector<MutantOutcome> evaluate_mutants(const Program& original, std::span<const MutantRecord> mutants,
                                            std::span<const MrInstance> mrs, const EquivalenceConfig& cfg,
                                            const CellSeeds& seeds, bool collapse_replicates,
                                            bool* observed_pass = nullptr, bool* observed_fail = nullptr);
// As above, with E2 outcomes already known for some mutants (index-aligned).
std::vector<MutantOutcome> evaluate_mutants(const Program& original, std::span<const MutantRecord> mutants,
                                            std::span<const MrInstance> mrs, const EquivalenceConfig& cfg,
                                            const CellSeeds& seeds, bool collapse_replicates,
                                            std::span<const std::optional<bool>> e2_hints,
                                            bool* observed_pass = nullptr, bool* observed_fail = nullptr);

// Counts, SMS and rates from per-mutant outcomes.
void summarize(CellResult& cell);

CellResult run_cell(PutId put, MetaPattern mp, OperatorClass op, const EngineConfig& cfg, std::uint64_t seed);

struct CampaignResult {
    std::uint64_t seed = 0;
    EngineConfig config;
    std::vector<CellResult> tensor;  // 300 cells in (put, pattern, operator) order
    std::vector<CellResult> cells;   // 60 cells in (put, pattern) order, operators pooled
};

CampaignResult run_campaign(const EngineConfig& cfg, std::uint64_t seed);

// Distinct (pattern, outcome) pairs observed over one PUT's cells, / 10.
double pattern_coverage(std::span<const CellResult> put_results);

}  // namespace semmut
