#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "semmut/adequacy.hpp"
#include "semmut/kernel_catalog.hpp"
#include "semmut/rng.hpp"

using namespace semmut;

namespace {

const MutantRecord& mutant(PutId p, const std::string& id) {
    for (const auto& m : authored(p))
        if (m.id == id) return m;
    FAIL("no mutant " << id);
    throw;
}

Program shifted(PutId put, double delta) {
    const Program& o = original_program(put);
    return Program(put, o.domain(), [&o, delta](const Query& q) { return o(q) + delta; });
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no semmut::Error thrown");
    return ErrorKind::InvalidArgument;
}

EngineConfig small_config() {
    EngineConfig c;
    c.equivalence.k_eq = 10;
    c.replicates = 2;
    return c;
}

const CampaignResult& small_campaign() {
    static const CampaignResult r = run_campaign(small_config(), 42);
    return r;
}

}  // namespace

TEST_CASE("E2 output equivalence") {
    const Program& a2 = original_program(PutId::A2);
    EquivalenceConfig cfg;
    CHECK(e2_output_equivalence(a2, a2, cfg, 1));
    CHECK_FALSE(e2_output_equivalence(a2, shifted(PutId::A2, 1.0), cfg, 1));
    CHECK(e2_output_equivalence(a2, shifted(PutId::A2, cfg.eps_eq / 2), cfg, 1));
    Program nan(PutId::A2, a2.domain(), [](const Query&) { return std::numeric_limits<double>::quiet_NaN(); });
    CHECK_FALSE(e2_output_equivalence(a2, nan, cfg, 1));
    Program throwing(PutId::A2, a2.domain(), [](const Query&) -> double { throw std::runtime_error("x"); });
    CHECK_FALSE(e2_output_equivalence(a2, throwing, cfg, 1));

    EquivalenceConfig exact = cfg;
    exact.eps_eq = 0.0;
    CHECK(e2_output_equivalence(a2, a2, exact, 1));
    CHECK_FALSE(e2_output_equivalence(a2, shifted(PutId::A2, 1e-12), exact, 1));
}

TEST_CASE("E1 AVP coherence") {
    const Program& a2 = original_program(PutId::A2);
    const auto& mp5 = mrs_for(PutId::A2, MetaPattern::MP5);
    CHECK(e1_avp_coherence(a2, a2, mp5, 1));
    CHECK(e1_avp_coherence(a2, shifted(PutId::A2, 1.0), std::span<const MrInstance>{}, 1));
    const auto& nopivot = mutant(PutId::A2, "A2-SI-1");
    CHECK(nopivot.description.find("no pivoting") != std::string::npos);
    for (std::uint64_t s : {1ULL, 42ULL, 7ULL}) CHECK_FALSE(e1_avp_coherence(a2, nopivot.program, mp5, s));
}

TEST_CASE("killed determination") {
    const Program& a2 = original_program(PutId::A2);
    const Program plus_one = shifted(PutId::A2, 1.0);
    CHECK_FALSE(killed_determination(a2, plus_one, std::span<const MrInstance>{}, 3));

    // A relation the original already violates cannot kill.
    MrInstance broken = equality_mr("fixture", PutId::A2, "always violated", a2.domain(), identity_transform(), 4,
                                    [](const Program& p, double x, double, std::uint64_t s) {
                                        return std::pair{p(x, s), p(x, s) + 1.0};
                                    });
    std::vector<MrInstance> set{broken};
    CHECK_FALSE(killed_determination(a2, plus_one, set, 3));

    const auto& os = mutant(PutId::B2, "B2-OS-1");
    CHECK(os.description.find("min(0.95, r)") != std::string::npos);
    CHECK(killed_determination(original_program(PutId::B2), os.program, mrs_for(PutId::B2, MetaPattern::MP2), 42));
}

TEST_CASE("classify_mutant") {
    const Program& a2 = original_program(PutId::A2);
    EquivalenceConfig cfg;
    const auto& mp1 = mrs_for(PutId::A2, MetaPattern::MP1);
    CHECK(classify_mutant(a2, a2, mp1, cfg, 5) == MutantState::equivalent);
    // Vacant cell: E1 holds vacuously, E2 fails, nothing can kill.
    CHECK(classify_mutant(a2, shifted(PutId::A2, 1.0), mrs_for(PutId::A2, MetaPattern::MP2), cfg, 5) ==
          MutantState::survived);
    const auto& os = mutant(PutId::B2, "B2-OS-1");
    CHECK(classify_mutant(original_program(PutId::B2), os.program, mrs_for(PutId::B2, MetaPattern::MP2), cfg, 42) ==
          MutantState::killed);
    EquivalenceConfig e2only = cfg;
    e2only.mode = EquivalenceMode::E2_only;
    CHECK(classify_mutant(a2, shifted(PutId::A2, cfg.eps_eq / 4), mp1, e2only, 5) == MutantState::equivalent);
}

TEST_CASE("SMS and false-equivalence bound") {
    CHECK(compute_sms(20, 4, 4) == 0.25);
    CHECK(compute_sms(10, 0, 0) == 0.0);
    CHECK(compute_sms(10, 0, 10) == 1.0);
    CHECK(kind_of([] { compute_sms(10, 10, 0); }) == ErrorKind::AllEquivalent);
    CHECK(kind_of([] { compute_sms(5, 3, 3); }) == ErrorKind::InvalidArgument);

    CHECK(false_equiv_bound(1000, 0.0) == 1.0);
    CHECK(false_equiv_bound(1000, 0.01) == doctest::Approx(4.3171247411e-05).epsilon(1e-9));
    CHECK(false_equiv_bound(1, 1.0) == 0.0);
    double prev = 2.0;
    for (std::size_t k : {1, 10, 100, 1000, 10000}) {
        double b = false_equiv_bound(k, 0.001);
        CHECK(b < prev);
        prev = b;
    }
    CHECK(kind_of([] { false_equiv_bound(0, 0.1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { false_equiv_bound(10, 1.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("pattern coverage") {
    std::vector<CellResult> cells(5);
    for (std::size_t k = 0; k < 5; ++k) {
        cells[k].mp = kCampaignPatterns[k];
        cells[k].observed_pass = cells[k].observed_fail = true;
    }
    CHECK(pattern_coverage(cells) == 1.0);
    for (auto& c : cells) c.observed_pass = c.observed_fail = false;
    CHECK(pattern_coverage(cells) == 0.0);
    for (auto& c : cells) c.observed_pass = true;
    CHECK(pattern_coverage(cells) == 0.5);
}

TEST_CASE("config validation") {
    EngineConfig c;
    c.replicates = 0;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::ConfigInvalid);
    c = EngineConfig{};
    c.equivalence.k_eq = 0;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::ConfigInvalid);
    c = EngineConfig{};
    c.equivalence.eps_eq = -1.0;
    CHECK(kind_of([&] { c.validate(); }) == ErrorKind::ConfigInvalid);
    CHECK(parse_equivalence_mode("e1") == EquivalenceMode::E1_only);
    CHECK(parse_equivalence_mode("E1_and_E2") == EquivalenceMode::E1_and_E2);
    CHECK_FALSE(parse_equivalence_mode("e3").has_value());
}

TEST_CASE("run_cell basics") {
    EngineConfig cfg = small_config();
    SUBCASE("vacant cell kills nothing") {
        auto c = run_cell(PutId::A2, MetaPattern::MP2, OperatorClass::OS, cfg, 42);
        CHECK(c.killed_count == 0);
        CHECK_FALSE(c.observed_pass);
        CHECK_FALSE(c.observed_fail);
    }
    SUBCASE("deterministic PUTs give all-or-nothing fail ratios") {
        for (PutId p : {PutId::A1, PutId::A2, PutId::A3})
            for (OperatorClass op : {OperatorClass::TF, OperatorClass::SI}) {
                auto c = run_cell(p, primary_mp(p), op, cfg, 42);
                for (const auto& m : c.per_mutant) CHECK((m.fail_ratio == 0.0 || m.fail_ratio == 1.0));
            }
    }
    SUBCASE("repeatable") {
        auto a = run_cell(PutId::B2, MetaPattern::MP2, OperatorClass::OS, cfg, 9);
        auto b = run_cell(PutId::B2, MetaPattern::MP2, OperatorClass::OS, cfg, 9);
        REQUIRE(a.per_mutant.size() == b.per_mutant.size());
        for (std::size_t i = 0; i < a.per_mutant.size(); ++i) {
            CHECK(a.per_mutant[i].state == b.per_mutant[i].state);
            CHECK(a.per_mutant[i].fail_ratio == b.per_mutant[i].fail_ratio);
        }
        CHECK(a.sms == b.sms);
    }
}

TEST_CASE("equivalence modes compose as an intersection") {
    EngineConfig cfg = small_config();
    cfg.replicates = 1;
    const std::pair<PutId, MetaPattern> cells[] = {
        {PutId::A2, MetaPattern::MP5}, {PutId::A1, MetaPattern::MP4}, {PutId::B2, MetaPattern::MP2},
        {PutId::C1, MetaPattern::MP5}, {PutId::D2, MetaPattern::MP2}};
    for (auto [put, mp] : cells)
        for (OperatorClass op : kAllOperators) {
            CAPTURE(to_string(put));
            CAPTURE(to_string(op));
            auto equiv_ids = [&](EquivalenceMode m) {
                EngineConfig c = cfg;
                c.equivalence.mode = m;
                std::set<std::string> ids;
                for (const auto& o : run_cell(put, mp, op, c, 42).per_mutant)
                    if (o.state == MutantState::equivalent) ids.insert(o.id);
                return ids;
            };
            auto both = equiv_ids(EquivalenceMode::E1_and_E2);
            auto e1 = equiv_ids(EquivalenceMode::E1_only);
            auto e2 = equiv_ids(EquivalenceMode::E2_only);
            std::set<std::string> meet;
            std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::inserter(meet, meet.end()));
            CHECK(both == meet);
        }
}

TEST_CASE("campaign tensor invariants") {
    const auto& r = small_campaign();
    REQUIRE(r.tensor.size() == 300);
    REQUIRE(r.cells.size() == 60);
    int aligned = 0;
    for (const auto& c : r.cells) aligned += c.aligned;
    CHECK(aligned == 12);

    for (const auto& c : r.tensor) {
        CAPTURE(to_string(c.put));
        CHECK(c.inst_count == c.equiv_count + c.killed_count + c.survive_count);
        CHECK(c.inst_count <= c.pool_size);
        if (c.sms) {
            CHECK(*c.sms >= 0.0);
            CHECK(*c.sms <= 1.0);
        } else {
            CHECK(c.inst_count == c.equiv_count);
        }
        if (density(c.put, c.mp) == CellDensity::vacant) CHECK(c.killed_count == 0);
        for (const auto& m : c.per_mutant) {
            CHECK(m.fail_ratio >= 0.0);
            CHECK(m.fail_ratio <= 1.0);
            CHECK((m.state == MutantState::killed) == (m.fail_ratio > 0.0));
            if (!descriptor(c.put).stochastic) CHECK((m.fail_ratio == 0.0 || m.fail_ratio == 1.0));
        }
    }
    // The operator slices partition each pooled cell.
    for (std::size_t c = 0; c < 60; ++c) {
        int inst = 0, killed = 0;
        for (std::size_t o = 0; o < 5; ++o) {
            inst += r.tensor[c * 5 + o].inst_count;
            killed += r.tensor[c * 5 + o].killed_count;
        }
        CHECK(inst == r.cells[c].inst_count);
        CHECK(killed == r.cells[c].killed_count);
        CHECK(r.cells[c].inst_count == static_cast<int>(pool(r.cells[c].put).size()));
    }
}

TEST_CASE("run_cell reproduces the campaign tensor") {
    const auto& r = small_campaign();
    for (std::size_t t : {0, 7, 61, 133, 142, 188, 219, 240, 277, 299}) {
        const CellResult& want = r.tensor[t];
        CAPTURE(t);
        auto got = run_cell(want.put, want.mp, *want.op, r.config, r.seed);
        CHECK(got.inst_count == want.inst_count);
        CHECK(got.equiv_count == want.equiv_count);
        CHECK(got.killed_count == want.killed_count);
        CHECK(got.sms == want.sms);
        REQUIRE(got.per_mutant.size() == want.per_mutant.size());
        for (std::size_t i = 0; i < got.per_mutant.size(); ++i) {
            CHECK(got.per_mutant[i].id == want.per_mutant[i].id);
            CHECK(got.per_mutant[i].state == want.per_mutant[i].state);
            CHECK(got.per_mutant[i].fail_ratio == want.per_mutant[i].fail_ratio);
        }
    }
}

TEST_CASE("campaign results do not depend on worker count") {
    EngineConfig cfg = small_config();
    cfg.replicates = 1;
    cfg.workers = 1;
    auto a = run_campaign(cfg, 3);
    cfg.workers = 3;
    auto b = run_campaign(cfg, 3);
    for (std::size_t c = 0; c < 60; ++c) {
        REQUIRE(a.cells[c].per_mutant.size() == b.cells[c].per_mutant.size());
        CHECK(a.cells[c].sms == b.cells[c].sms);
        for (std::size_t i = 0; i < a.cells[c].per_mutant.size(); ++i) {
            CHECK(a.cells[c].per_mutant[i].state == b.cells[c].per_mutant[i].state);
            CHECK(a.cells[c].per_mutant[i].fail_ratio == b.cells[c].per_mutant[i].fail_ratio);
        }
    }
}
