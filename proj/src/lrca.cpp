#include "semmut/lrca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "parallel.hpp"
#include "semmut/kernel_catalog.hpp"
#include "semmut/rng.hpp"
#include "semmut/stats.hpp"

namespace semmut {

namespace {

constexpr int kBaselineSteps = 50;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

bool same_band(double a, double b) { return std::abs(a - b) < 1e-12; }

std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = mean(a), mb = mean(b), sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0 || sbb <= 0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

const AssumptionBaseline* find_baseline(std::span<const AssumptionBaseline> baselines, PutId put) {
    for (const auto& b : baselines)
        if (b.put == put) return &b;
    return nullptr;
}

}  // namespace

void LrcaConfig::validate() const {
    if (!(fail_ratio_cutoff > 0.0 && fail_ratio_cutoff <= 1.0)) fail(ErrorKind::ConfigInvalid, "fail_ratio_cutoff must lie in (0, 1]");
    if (std::none_of(std::begin(kOodBands), std::end(kOodBands), [&](double b) { return same_band(b, ood_band); }))
        fail(ErrorKind::ConfigInvalid, "ood_band must be one of 0.02, 0.05, 0.10");
    if (!(tolerance_multiplier > 0.0) || !std::isfinite(tolerance_multiplier))
        fail(ErrorKind::ConfigInvalid, "tolerance_multiplier must be positive");
    if (replicates < 1) fail(ErrorKind::ConfigInvalid, "replicates must be >= 1");
}

AssumptionBaseline assumption_baseline(PutId put, std::uint64_t seed, int replicates) {
    const Program& p = original_program(put);
    const double mid = p.domain().at(0.5);
    AssumptionBaseline b;
    b.put = put;
    std::vector<double> samples, traj_means;
    for (int r = 0; r < replicates; ++r) {
        std::uint64_t s = derive_seed({seed, index_of(put), 0x13, static_cast<std::uint64_t>(r)});
        samples.push_back(p(mid, s));
        if (p.has_trajectory()) traj_means.push_back(mean(p.trajectory(Query{mid, s, 0, 0}, kBaselineSteps)));
    }
    if (samples.size() >= 3) {
        std::vector<double> head(samples.begin(), samples.end() - 1), tail(samples.begin() + 1, samples.end());
        b.lag1_autocorrelation = pearson(midranks(head), midranks(tail));
    }
    if (traj_means.size() >= 2) {
        std::size_t h = traj_means.size() / 2;
        std::span<const double> all(traj_means);
        b.trajectory_drift = std::abs(mean(all.subspan(h)) - mean(all.first(h)));
        b.trajectory_spread = population_sd(all);
    }
    return b;
}

std::vector<AssumptionBaseline> assumption_baselines(std::uint64_t seed, int replicates, int workers) {
    std::vector<AssumptionBaseline> out(kAllPuts.size());
    detail::parallel_for(out.size(), workers,
                         [&](std::size_t i) { out[i] = assumption_baseline(kAllPuts[i], seed, replicates); });
    return out;
}

bool iid_violated(const AssumptionBaseline& b) {
    return b.lag1_autocorrelation && *b.lag1_autocorrelation > kIidAutocorrelationLimit;
}

bool stationarity_violated(const AssumptionBaseline& b, double tolerance_multiplier) {
    return b.trajectory_drift && *b.trajectory_drift > tolerance_multiplier * b.trajectory_spread;
}

KillEvidence evidence_of(const MutantOutcome& m, PutId put, const AssumptionBaseline* baseline) {
    KillEvidence ev;
    ev.put = put;
    ev.fail_ratio = m.fail_ratio;
    ev.methods = m.kill_methods;
    ev.in_band_killed = m.in_band_killed;
    ev.artefact_flag = m.artefact_flag;
    ev.changed_parameters = m.changed_parameters;
    if (baseline) ev.baseline = *baseline;
    return ev;
}

RootCause resolve_priority(std::span<const RootCause> causes) {
    RootCause best = RootCause::C1;
    for (RootCause c : causes) best = std::max(best, c);
    return best;
}

LrcaAnnotation diagnose(const std::string& mutant_id, const KillEvidence& ev, const LrcaConfig& cfg) {
    cfg.validate();
    if (!(ev.fail_ratio >= 0.0 && ev.fail_ratio <= 1.0))
        fail(ErrorKind::MissingEvidence, mutant_id + ": fail_ratio outside [0, 1]");
    const PutClass cls = class_of(ev.put);
    std::vector<RootCause> causes;
    std::vector<std::string> notes;

    if (ev.fail_ratio < cfg.fail_ratio_cutoff) {
        causes.push_back(RootCause::C2);
        notes.push_back("L1 fail_ratio " + fixed(ev.fail_ratio) + " < " + fixed(cfg.fail_ratio_cutoff));
    }
    if (cls == PutClass::C || cls == PutClass::D) {
        auto it = std::find_if(ev.in_band_killed.begin(), ev.in_band_killed.end(),
                               [&](const auto& e) { return same_band(e.first, cfg.ood_band); });
        if (it == ev.in_band_killed.end())
            fail(ErrorKind::MissingEvidence, mutant_id + ": no in-band rerun for ood_band " + fixed(cfg.ood_band));
        if (!it->second) {
            causes.push_back(RootCause::C3);
            notes.push_back("L2 failures confined to the outer " + fixed(cfg.ood_band) + " band");
        }
    }
    if (cls == PutClass::B || cls == PutClass::D) {
        auto uses = [&](VerificationMethod m) { return std::find(ev.methods.begin(), ev.methods.end(), m) != ev.methods.end(); };
        bool wilcoxon = uses(VerificationMethod::wilcoxon), dtw = uses(VerificationMethod::dtw);
        if ((wilcoxon || dtw) && !ev.baseline)
            fail(ErrorKind::MissingEvidence, mutant_id + ": no assumption baseline for " + std::string(to_string(ev.put)));
        if (wilcoxon && iid_violated(*ev.baseline)) {
            causes.push_back(RootCause::C4);
            notes.push_back("L3 lag-1 autocorrelation " + fixed(*ev.baseline->lag1_autocorrelation));
        } else if (dtw && stationarity_violated(*ev.baseline, cfg.tolerance_multiplier)) {
            causes.push_back(RootCause::C4);
            notes.push_back("L3 trajectory drift beyond " + fixed(cfg.tolerance_multiplier) + " x spread");
        }
    }
    if (ev.artefact_flag || ev.changed_parameters > kOverInjectionLimit) {
        causes.push_back(RootCause::C5);
        notes.push_back(ev.artefact_flag ? "artefact flag" : "over-injection: " + std::to_string(ev.changed_parameters) + " parameters");
    }

    LrcaAnnotation a;
    a.mutant_id = mutant_id;
    std::sort(causes.begin(), causes.end());
    causes.erase(std::unique(causes.begin(), causes.end()), causes.end());
    if (causes.empty()) causes.push_back(RootCause::C1);
    a.root_cause = resolve_priority(causes);
    a.co_occurring = causes;
    if (notes.empty()) notes.push_back("stable in-band kill");
    for (std::size_t i = 0; i < notes.size(); ++i) a.evidence += (i ? "; " : "") + notes[i];
    return a;
}

Shares shares(const CellResult& cell) {
    if (cell.killed_count < 1) fail(ErrorKind::NoKills, "cell has no killed mutant");
    int c1 = 0;
    for (const auto& m : cell.per_mutant) {
        if (m.state != MutantState::killed) continue;
        if (!m.root_cause) fail(ErrorKind::MissingEvidence, m.id + ": killed mutant without a root cause");
        c1 += *m.root_cause == RootCause::C1;
    }
    Shares s;
    s.c1_share = static_cast<double>(c1) / cell.killed_count;
    s.suspect_share = 1.0 - s.c1_share;
    return s;
}

void annotate(CellResult& cell, std::span<const AssumptionBaseline> baselines, const LrcaConfig& cfg) {
    const AssumptionBaseline* b = find_baseline(baselines, cell.put);
    for (auto& m : cell.per_mutant) {
        m.root_cause.reset();
        m.co_occurring.clear();
        if (m.state != MutantState::killed) continue;
        LrcaAnnotation a = diagnose(m.id, evidence_of(m, cell.put, b), cfg);
        m.root_cause = a.root_cause;
        m.co_occurring = a.co_occurring;
    }
    cell.c1_share.reset();
    cell.suspect_share.reset();
    if (cell.killed_count > 0) {
        Shares s = shares(cell);
        cell.c1_share = s.c1_share;
        cell.suspect_share = s.suspect_share;
    }
}

void annotate(CampaignResult& result, std::span<const AssumptionBaseline> baselines, const LrcaConfig& cfg) {
    for (auto& c : result.cells) annotate(c, baselines, cfg);
    for (auto& c : result.tensor) annotate(c, baselines, cfg);
}

CalibrationReport calibrate(const CampaignResult& result, std::span<const AssumptionBaseline> baselines,
                            const LrcaConfig& base, std::span<const double> bands, std::span<const double> multipliers) {
    CalibrationReport report;
    for (double band : bands) {
        for (double mult : multipliers) {
            LrcaConfig cfg = base;
            cfg.ood_band = band;
            cfg.tolerance_multiplier = mult;
            CalibrationEntry e;
            e.ood_band = band;
            e.tolerance_multiplier = mult;
            double sum = 0.0;
            for (CellResult cell : result.cells) {
                annotate(cell, baselines, cfg);
                if (!cell.c1_share) continue;
                ++e.cells_with_shares;
                sum += *cell.c1_share;
                e.cells_low_suspect += *cell.suspect_share <= kLowSuspectShare;
            }
            if (e.cells_with_shares > 0) e.mean_c1_share = sum / e.cells_with_shares;
            report.entries.push_back(e);
        }
    }
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        const auto& b = report.entries[report.best_index];
        if (e.cells_low_suspect > b.cells_low_suspect ||
            (e.cells_low_suspect == b.cells_low_suspect && e.mean_c1_share.value_or(0) > b.mean_c1_share.value_or(0)))
            report.best_index = i;
    }
    if (!report.entries.empty()) report.entries[report.best_index].best = true;
    return report;
}

std::vector<CutoffRow> h4_cutoff_sweep(std::span<const CellResult> cells, std::span<const double> cutoffs) {
    if (cutoffs.empty()) fail(ErrorKind::InvalidArgument, "cutoff list is empty");
    int defined = 0;
    for (const auto& c : cells) defined += c.suspect_share.has_value();
    std::vector<CutoffRow> rows;
    for (double cut : cutoffs) {
        CutoffRow row;
        row.cutoff = cut;
        for (const auto& c : cells)
            if (c.suspect_share && *c.suspect_share <= cut) ++row.count;
        row.ratio = defined > 0 ? static_cast<double>(row.count) / defined : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> default_h4_cutoffs() {
    std::vector<double> out;
    for (int i = 1; i <= 10; ++i) out.push_back(i / 20.0);
    return out;
}

}  // namespace semmut
