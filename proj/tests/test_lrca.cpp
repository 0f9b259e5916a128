#include <algorithm>

#include "doctest.h"
#include "semmut/lrca.hpp"
#include "semmut/rng.hpp"

using namespace semmut;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no semmut::Error thrown");
    return ErrorKind::InvalidArgument;
}

KillEvidence stable(PutId put) {
    KillEvidence ev;
    ev.put = put;
    ev.fail_ratio = 1.0;
    for (double b : kOodBands) ev.in_band_killed.emplace_back(b, true);
    return ev;
}

AssumptionBaseline baseline(PutId put, double lag1, double drift, double spread) {
    AssumptionBaseline b;
    b.put = put;
    b.lag1_autocorrelation = lag1;
    b.trajectory_drift = drift;
    b.trajectory_spread = spread;
    return b;
}

RootCause label(const KillEvidence& ev, const LrcaConfig& cfg = {}) { return diagnose("m", ev, cfg).root_cause; }

MutantOutcome killed_with(RootCause c) {
    MutantOutcome m;
    m.state = MutantState::killed;
    m.fail_ratio = 1.0;
    m.root_cause = c;
    return m;
}

const CampaignResult& small_campaign() {
    static const CampaignResult r = [] {
        EngineConfig c;
        c.equivalence.k_eq = 10;
        c.replicates = 1;
        return run_campaign(c, 11);
    }();
    return r;
}

}  // namespace

TEST_CASE("LRCA config validation") {
    LrcaConfig ok;
    ok.validate();
    auto bad = [](auto edit) {
        LrcaConfig c;
        edit(c);
        return kind_of([&] { c.validate(); });
    };
    CHECK(bad([](LrcaConfig& c) { c.fail_ratio_cutoff = 0.0; }) == ErrorKind::ConfigInvalid);
    CHECK(bad([](LrcaConfig& c) { c.fail_ratio_cutoff = 1.2; }) == ErrorKind::ConfigInvalid);
    CHECK(bad([](LrcaConfig& c) { c.ood_band = 0.03; }) == ErrorKind::ConfigInvalid);
    CHECK(bad([](LrcaConfig& c) { c.tolerance_multiplier = 0.0; }) == ErrorKind::ConfigInvalid);
    CHECK(bad([](LrcaConfig& c) { c.replicates = 0; }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("diagnose examples") {
    SUBCASE("unstable kill on a deterministic PUT") {
        KillEvidence ev = stable(PutId::A2);
        ev.fail_ratio = 0.5;
        auto a = diagnose("m", ev, {});
        CHECK(a.root_cause == RootCause::C2);
        CHECK(a.co_occurring == std::vector{RootCause::C2});
        CHECK(a.evidence.find("L1") != std::string::npos);
    }
    SUBCASE("kill confined to the outer band") {
        KillEvidence ev = stable(PutId::C2);
        ev.in_band_killed = {{0.02, false}, {0.05, true}, {0.10, true}};
        CHECK(label(ev) == RootCause::C3);
        LrcaConfig wider;
        wider.ood_band = 0.05;
        CHECK(label(ev, wider) == RootCause::C1);
    }
    SUBCASE("stable in-band kill") {
        for (PutId p : kAllPuts) CHECK(label(stable(p)) == RootCause::C1);
        auto a = diagnose("m", stable(PutId::C1), {});
        CHECK(a.co_occurring == std::vector{RootCause::C1});
    }
    SUBCASE("assumption violations") {
        KillEvidence ev = stable(PutId::B2);
        ev.methods = {VerificationMethod::wilcoxon};
        ev.baseline = baseline(PutId::B2, 0.9, 0.0, 1.0);
        CHECK(label(ev) == RootCause::C4);
        ev.baseline = baseline(PutId::B2, 0.1, 0.0, 1.0);
        CHECK(label(ev) == RootCause::C1);

        KillEvidence d = stable(PutId::D1);
        d.methods = {VerificationMethod::dtw};
        d.baseline = baseline(PutId::D1, 0.0, 5.0, 1.0);
        CHECK(label(d) == RootCause::C4);
        LrcaConfig loose;
        loose.tolerance_multiplier = 10.0;
        CHECK(label(d, loose) == RootCause::C1);
    }
    SUBCASE("artefact and over-injection") {
        KillEvidence ev = stable(PutId::A1);
        ev.artefact_flag = true;
        CHECK(label(ev) == RootCause::C5);
        ev.artefact_flag = false;
        ev.changed_parameters = kOverInjectionLimit + 1;
        CHECK(label(ev) == RootCause::C5);
        ev.changed_parameters = kOverInjectionLimit;
        CHECK(label(ev) == RootCause::C1);
    }
    SUBCASE("co-occurring labels resolve by priority") {
        KillEvidence ev = stable(PutId::D2);
        ev.fail_ratio = 0.3;
        ev.in_band_killed = {{0.02, false}, {0.05, false}, {0.10, false}};
        ev.artefact_flag = true;
        auto a = diagnose("m", ev, {});
        CHECK(a.root_cause == RootCause::C5);
        CHECK(a.co_occurring == std::vector{RootCause::C2, RootCause::C3, RootCause::C5});
    }
}

TEST_CASE("layers only apply to their PUT classes") {
    KillEvidence a = stable(PutId::A3);
    a.in_band_killed = {{0.02, false}, {0.05, false}, {0.10, false}};
    a.methods = {VerificationMethod::wilcoxon, VerificationMethod::dtw};
    a.baseline = baseline(PutId::A3, 0.99, 100.0, 0.0);
    CHECK(label(a) == RootCause::C1);

    KillEvidence b = stable(PutId::B1);
    b.in_band_killed = {{0.02, false}};
    CHECK(label(b) == RootCause::C1);

    KillEvidence c = stable(PutId::C3);
    c.methods = {VerificationMethod::dtw};
    c.baseline = baseline(PutId::C3, 0.99, 100.0, 0.0);
    CHECK(label(c) == RootCause::C1);
}

TEST_CASE("missing evidence") {
    KillEvidence c = stable(PutId::C1);
    c.in_band_killed.clear();
    CHECK(kind_of([&] { diagnose("m", c, {}); }) == ErrorKind::MissingEvidence);
    KillEvidence b = stable(PutId::B3);
    b.methods = {VerificationMethod::wilcoxon};
    CHECK(kind_of([&] { diagnose("m", b, {}); }) == ErrorKind::MissingEvidence);
    KillEvidence r = stable(PutId::A1);
    r.fail_ratio = 1.5;
    CHECK(kind_of([&] { diagnose("m", r, {}); }) == ErrorKind::MissingEvidence);
}

TEST_CASE("priority resolution picks the highest label") {
    CounterRng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<RootCause> set;
        for (int c = 0; c < 5; ++c)
            if (rng.uniform() < 0.4) set.push_back(static_cast<RootCause>(c));
        RootCause r = resolve_priority(set);
        if (set.empty()) {
            CHECK(r == RootCause::C1);
            continue;
        }
        CHECK(std::find(set.begin(), set.end(), r) != set.end());
        for (RootCause c : set) CHECK(c <= r);
    }
}

TEST_CASE("shares") {
    CellResult cell;
    cell.per_mutant = {killed_with(RootCause::C1), killed_with(RootCause::C1)};
    cell.killed_count = 2;
    auto s = shares(cell);
    CHECK(s.c1_share == 1.0);
    CHECK(s.suspect_share == 0.0);

    cell.per_mutant.clear();
    cell.per_mutant.push_back(killed_with(RootCause::C1));
    for (RootCause c : {RootCause::C2, RootCause::C3, RootCause::C4, RootCause::C5}) cell.per_mutant.push_back(killed_with(c));
    cell.killed_count = 5;
    s = shares(cell);
    CHECK(s.c1_share == doctest::Approx(0.2));
    CHECK(s.suspect_share == doctest::Approx(0.8));

    CellResult none;
    CHECK(kind_of([&] { shares(none); }) == ErrorKind::NoKills);
}

TEST_CASE("H4 cutoff sweep") {
    auto cuts = default_h4_cutoffs();
    REQUIRE(cuts.size() == 10);
    CHECK(cuts.front() == doctest::Approx(0.05));
    CHECK(cuts.back() == doctest::Approx(0.50));

    std::vector<CellResult> cells(8);
    const double shares_[] = {0.0, 0.1, 0.2, 0.25, 0.5, 0.9, 1.0};
    for (std::size_t i = 0; i < 7; ++i) cells[i].suspect_share = shares_[i];
    auto rows = h4_cutoff_sweep(cells, cuts);
    REQUIRE(rows.size() == cuts.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].ratio >= 0.0);
        CHECK(rows[i].ratio <= 1.0);
        if (i) CHECK(rows[i].count >= rows[i - 1].count);
    }
    CHECK(rows[0].count == 1);
    CHECK(rows[3].count == 3);  // 0.20
    CHECK(rows[9].count == 5);  // 0.50
    CHECK(rows[9].ratio == doctest::Approx(5.0 / 7));
    CHECK(kind_of([&] { h4_cutoff_sweep(cells, std::span<const double>{}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("assumption baselines") {
    auto b2 = assumption_baseline(PutId::B2, 1, 5);
    CHECK(b2.put == PutId::B2);
    CHECK(b2.trajectory_drift.has_value());
    auto b1 = assumption_baseline(PutId::B1, 1, 5);
    CHECK_FALSE(b1.trajectory_drift.has_value());
    // Deterministic output: constant samples carry no autocorrelation.
    CHECK_FALSE(assumption_baseline(PutId::A2, 1, 5).lag1_autocorrelation.has_value());
    auto again = assumption_baseline(PutId::B2, 1, 5);
    CHECK(again.lag1_autocorrelation == b2.lag1_autocorrelation);
    CHECK(again.trajectory_drift == b2.trajectory_drift);
}

TEST_CASE("annotation leaves counts and SMS untouched") {
    CampaignResult r = small_campaign();
    auto baselines = assumption_baselines(11, 5);
    for (double band : kOodBands)
        for (double mult : kToleranceMultipliers) {
            LrcaConfig cfg;
            cfg.ood_band = band;
            cfg.tolerance_multiplier = mult;
            CampaignResult copy = small_campaign();
            annotate(copy, baselines, cfg);
            for (std::size_t c = 0; c < 60; ++c) {
                const auto& a = copy.cells[c];
                const auto& o = r.cells[c];
                CHECK(a.inst_count == o.inst_count);
                CHECK(a.equiv_count == o.equiv_count);
                CHECK(a.killed_count == o.killed_count);
                CHECK(a.sms == o.sms);
                CHECK(a.suspect_share.has_value() == (a.killed_count > 0));
                for (const auto& m : a.per_mutant) CHECK(m.root_cause.has_value() == (m.state == MutantState::killed));
            }
        }
}

TEST_CASE("calibration grid") {
    CampaignResult r = small_campaign();
    auto baselines = assumption_baselines(11, 5);
    auto report = calibrate(r, baselines, LrcaConfig{});
    REQUIRE(report.entries.size() == 9);
    CHECK(report.reference_ood_band == 0.02);
    CHECK(report.reference_tolerance_multiplier == 3.0);
    int best = 0;
    for (const auto& e : report.entries) best += e.best;
    CHECK(best == 1);
    CHECK(report.entries[report.best_index].best);
    for (const auto& e : report.entries) {
        CHECK(e.cells_low_suspect <= e.cells_with_shares);
        CHECK(e.cells_low_suspect <= report.entries[report.best_index].cells_low_suspect);
    }
    // Shares are defined wherever something was killed, independent of the grid point.
    for (const auto& e : report.entries) CHECK(e.cells_with_shares == report.entries.front().cells_with_shares);
}

TEST_CASE("multiplier has no effect when no trajectory evidence is involved") {
    // Only L3-DTW reads the multiplier; with no DTW kills every multiplier agrees.
    CellResult cell;
    cell.put = PutId::C1;
    MutantOutcome m;
    m.state = MutantState::killed;
    m.fail_ratio = 0.6;
    m.kill_methods = {VerificationMethod::tolerance_equality};
    for (double b : kOodBands) m.in_band_killed.emplace_back(b, b > 0.03);
    cell.per_mutant = {m, m};
    cell.per_mutant[1].fail_ratio = 1.0;
    cell.killed_count = 2;
    std::vector<AssumptionBaseline> none;
    for (double band : kOodBands) {
        std::optional<double> first;
        for (double mult : kToleranceMultipliers) {
            LrcaConfig cfg;
            cfg.ood_band = band;
            cfg.tolerance_multiplier = mult;
            CellResult c = cell;
            annotate(c, none, cfg);
            if (!first) first = c.suspect_share;
            CHECK(c.suspect_share == first);
        }
    }
}
