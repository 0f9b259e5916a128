#include "semmut/degeneration.hpp"

#include <cmath>
#include <cstdio>

#include "semmut/kernel_catalog.hpp"
#include "semmut/mr_catalog.hpp"
#include "semmut/rng.hpp"

namespace semmut {

void DegenerateLimitConfig::validate() const {
    std::string missing;
    if (eps_eq != 0.0) missing += " eps_eq";
    if (k_eq < kMinDegenerateKeq) missing += " k_eq";
    if (eps_avp != 0.0) missing += " eps_avp";
    if (!equality_pattern_only) missing += " mp_set";
    if (!syntactic_operators) missing += " operator_source";
    if (!deterministic_puts) missing += " put_subset";
    if (!missing.empty()) fail(ErrorKind::ConfigIncomplete, "axes not at their limit:" + missing);
}

std::uint64_t degenerate_stream(PutId put, std::uint64_t seed) { return derive_seed({seed, index_of(put), 0xde9}); }

namespace {

void require_degenerate_inputs(PutId put, std::span<const MutantRecord> mutants) {
    if (class_of(put) != PutClass::A)
        fail(ErrorKind::NotDeterministicClass, std::string(to_string(put)) + " is outside the deterministic subset");
    for (const auto& m : mutants) {
        if (m.kind != MutantKind::syntactic) fail(ErrorKind::InvalidArgument, m.id + " is not a syntactic mutant");
        if (m.put != put) fail(ErrorKind::InvalidArgument, m.id + " belongs to another PUT");
    }
}

}  // namespace

ClassicCounts classic_counts(PutId put, std::span<const MutantRecord> mutants, std::size_t k_eq, std::uint64_t seed) {
    require_degenerate_inputs(put, mutants);
    if (k_eq < 1) fail(ErrorKind::InvalidArgument, "k_eq must be >= 1");
    const Program& original = original_program(put);
    const std::uint64_t stream = degenerate_stream(put, seed);
    ClassicCounts c;
    c.mutants = static_cast<int>(mutants.size());
    for (const auto& m : mutants) {
        bool differs = false;
        for (std::size_t i = 0; i < k_eq && !differs; ++i) {
            SamplePoint s = stream_point(original.domain(), stream, i);
            double a = original(s.x, s.seed);
            try {
                double b = m.program(s.x, s.seed);
                differs = !(a == b);  // NaN differs from everything
            } catch (const std::exception&) {
                differs = true;
            }
        }
        (differs ? c.killed : c.equivalent) += 1;
    }
    return c;
}

double classic_ms(PutId put, std::span<const MutantRecord> mutants, std::size_t k_eq, std::uint64_t seed) {
    ClassicCounts c = classic_counts(put, mutants, k_eq, seed);
    if (c.mutants == c.equivalent) fail(ErrorKind::AllEquivalent, "every syntactic mutant is equivalent");
    return static_cast<double>(c.killed) / (c.mutants - c.equivalent);
}

DegenerationReport check_degeneration(PutId put, const DegenerateLimitConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    auto mutants = syntactic_mutants(put);
    return check_degeneration(put, mutants, cfg, seed);
}

DegenerationReport check_degeneration(PutId put, std::span<const MutantRecord> mutants,
                                      const DegenerateLimitConfig& cfg, std::uint64_t seed,
                                      const SmsFormula& formula) {
    cfg.validate();
    require_degenerate_inputs(put, mutants);
    const Program& original = original_program(put);
    const std::uint64_t stream = degenerate_stream(put, seed);

    EquivalenceConfig eq{cfg.k_eq, cfg.eps_eq, EquivalenceMode::E1_and_E2};
    std::vector<MrInstance> mrs{equality_pattern_mr(original, cfg.k_eq)};
    CellSeeds seeds{stream, stream, std::vector<std::uint64_t>(20, stream)};

    DegenerationReport r;
    r.put = put;
    r.cell.put = put;
    r.cell.mp = MetaPattern::Eq;
    r.cell.pool_size = static_cast<int>(mutants.size());
    r.cell.per_mutant =
        evaluate_mutants(original, mutants, mrs, eq, seeds, true, &r.cell.observed_pass, &r.cell.observed_fail);
    summarize(r.cell);
    r.mutants = r.cell.inst_count;
    r.equiv_sms = r.cell.equiv_count;
    r.killed_sms = r.cell.killed_count;
    if (r.cell.inst_count > r.cell.equiv_count)
        r.sms = formula(r.cell.inst_count, r.cell.equiv_count, r.cell.killed_count);

    ClassicCounts c = classic_counts(put, mutants, cfg.k_eq, seed);
    r.equiv_ms = c.equivalent;
    r.killed_ms = c.killed;
    if (c.mutants > c.equivalent) r.ms = static_cast<double>(c.killed) / (c.mutants - c.equivalent);

    r.equal = r.equiv_sms == r.equiv_ms && r.killed_sms == r.killed_ms && r.sms == r.ms;
    if (!r.equal) {
        auto show = [](const std::optional<double>& v) {
            if (!v) return std::string("undefined");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", *v);
            return std::string(buf);
        };
        fail(ErrorKind::MismatchDetected, std::string(to_string(put)) + ": SMS " + show(r.sms) + " vs MS " +
                                              show(r.ms) + " (equiv " + std::to_string(r.equiv_sms) + "/" +
                                              std::to_string(r.equiv_ms) + ", killed " +
                                              std::to_string(r.killed_sms) + "/" + std::to_string(r.killed_ms) + ")");
    }

    annotate(r.cell, {}, LrcaConfig{});
    for (const auto& m : r.cell.per_mutant)
        if (m.root_cause) ++r.label_histogram[static_cast<std::size_t>(*m.root_cause)];
    r.suspect_share = r.cell.suspect_share;
    check_lrca_trivialisation(std::span<const CellResult>(&r.cell, 1));
    return r;
}

TrivialisationReport check_lrca_trivialisation(std::span<const CellResult> cells) {
    TrivialisationReport t;
    for (const auto& cell : cells)
        for (const auto& m : cell.per_mutant) {
            if (m.state != MutantState::killed) continue;
            ++t.kills;
            if (m.root_cause == RootCause::C1) {
                ++t.c1_kills;
            } else {
                fail(ErrorKind::TrivialisationViolated,
                     m.id + " labelled " + (m.root_cause ? std::string(to_string(*m.root_cause)) : "unlabelled"));
            }
        }
    t.suspect_share = t.kills > 0 ? 1.0 - static_cast<double>(t.c1_kills) / t.kills : 0.0;
    return t;
}

}  // namespace semmut
