#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "semmut/adequacy.hpp"
#include "semmut/lrca.hpp"
#include "semmut/mutation_catalog.hpp"

namespace semmut {

inline constexpr std::size_t kMinDegenerateKeq = 10000;

// The six limit axes; every one must sit at its limit value.
struct DegenerateLimitConfig {
    double eps_eq = 0.0;
    std::size_t k_eq = 100000;
    double eps_avp = 0.0;
    bool equality_pattern_only = true;
    bool syntactic_operators = true;
    bool deterministic_puts = true;

    // ConfigIncomplete when any axis is off its limit.
    void validate() const;
};

struct ClassicCounts {
    int mutants = 0;
    int equivalent = 0;
    int killed = 0;
};

// Exact output comparison over stream_point(domain, degenerate_stream(put,
// seed), i), i < k_eq. Mutants must be syntactic and the PUT deterministic.
ClassicCounts classic_counts(PutId put, std::span<const MutantRecord> mutants, std::size_t k_eq, std::uint64_t seed);
// AllEquivalent when every mutant agrees on all samples.
double classic_ms(PutId put, std::span<const MutantRecord> mutants, std::size_t k_eq, std::uint64_t seed);

std::uint64_t degenerate_stream(PutId put, std::uint64_t seed);

using SmsFormula = std::function<double(int, int, int)>;

struct DegenerationReport {
    PutId put = PutId::A1;
    int mutants = 0;
    int equiv_sms = 0;
    int killed_sms = 0;
    int equiv_ms = 0;
    int killed_ms = 0;
    std::optional<double> sms;
    std::optional<double> ms;
    bool equal = false;
    std::array<int, 5> label_histogram{};  // C1..C5 over killed mutants
    std::optional<double> suspect_share;
    CellResult cell;  // the engine run, annotated
};

// Runs the engine with the equality pattern and compares with classic_ms.
// MismatchDetected when counts or scores differ; TrivialisationViolated
// when a kill is labelled other than C1.
DegenerationReport check_degeneration(PutId put, const DegenerateLimitConfig& cfg, std::uint64_t seed);
DegenerationReport check_degeneration(PutId put, std::span<const MutantRecord> mutants,
                                      const DegenerateLimitConfig& cfg, std::uint64_t seed,
                                      const SmsFormula& formula = compute_sms);

struct TrivialisationReport {
    int kills = 0;
    int c1_kills = 0;
    double suspect_share = 0.0;
};

// TrivialisationViolated unless every kill is C1.
TrivialisationReport check_lrca_trivialisation(std::span<const CellResult> cells);

}  // namespace semmut
