#include <set>

#include "doctest.h"
#include "semmut/avp.hpp"
#include "semmut/kernel_catalog.hpp"
#include "semmut/mr_catalog.hpp"
#include "semmut/rng.hpp"

using namespace semmut;

TEST_CASE("density matrix cells") {
    CHECK(density(PutId::A2, MetaPattern::MP2) == CellDensity::vacant);
    CHECK(density(PutId::C1, MetaPattern::MP5) == CellDensity::substantial);
    CHECK(density(PutId::D3, MetaPattern::MP4) == CellDensity::vacant);
    CHECK(density(PutId::B2, MetaPattern::MP3) == CellDensity::substantial);
    CHECK(density(PutId::B3, MetaPattern::MP5) == CellDensity::vacant);
    CHECK(mrs_for(PutId::A2, MetaPattern::MP2).empty());
    CHECK_FALSE(mrs_for(PutId::C1, MetaPattern::MP5).empty());
    CHECK(mrs_for(PutId::D3, MetaPattern::MP4).empty());
}

TEST_CASE("density tallies as transcribed") {
    int tally[3] = {};
    for (PutId p : kAllPuts)
        for (MetaPattern mp : kCampaignPatterns) ++tally[static_cast<int>(density(p, mp))];
    CHECK(tally[static_cast<int>(CellDensity::substantial)] == 32);
    CHECK(tally[static_cast<int>(CellDensity::moderate)] == 19);
    CHECK(tally[static_cast<int>(CellDensity::vacant)] == 9);
    CHECK(tally[0] + tally[1] + tally[2] == 60);
}

TEST_CASE("primary pattern convention") {
    CHECK(primary_mp(PutId::C2) == MetaPattern::MP5);
    CHECK(primary_mp(PutId::D1) == MetaPattern::MP2);
    CHECK(primary_mp(PutId::A1) == MetaPattern::MP1);
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) CHECK(primary_mp(p) == MetaPattern::MP1);
    CHECK(primary_mp(PutId::B1) == MetaPattern::MP1);
    CHECK(primary_mp(PutId::B2) == MetaPattern::MP2);
    CHECK(primary_mp(PutId::B3) == MetaPattern::MP1);
    for (PutId p : {PutId::C1, PutId::C2, PutId::C3}) CHECK(primary_mp(p) == MetaPattern::MP5);
    for (PutId p : {PutId::D1, PutId::D2, PutId::D3}) CHECK(primary_mp(p) == MetaPattern::MP2);
    for (PutId p : kAllPuts) CHECK(density(p, primary_mp(p)) != CellDensity::vacant);
    try {
        primary_mp(static_cast<PutId>(77));
        FAIL("expected UnknownPut");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownPut);
    }
}

TEST_CASE("MR sets follow the density matrix") {
    std::set<std::string> ids;
    for (PutId p : kAllPuts)
        for (MetaPattern mp : kCampaignPatterns) {
            CAPTURE(to_string(p));
            CAPTURE(to_string(mp));
            const auto& mrs = mrs_for(p, mp);
            switch (density(p, mp)) {
                case CellDensity::vacant: CHECK(mrs.empty()); break;
                case CellDensity::moderate: CHECK(mrs.size() >= 1); break;
                case CellDensity::substantial: CHECK(mrs.size() >= 2); break;
            }
            for (const auto& mr : mrs) {
                CHECK(mr.put == p);
                CHECK(mr.mp == mp);
                CHECK(!mr.description.empty());
                CHECK(ids.insert(mr.id).second);
            }
        }
}

TEST_CASE("MR transforms keep inputs in the domain") {
    for (PutId p : kAllPuts) {
        const Interval dom = descriptor(p).input_domain;
        for (MetaPattern mp : kCampaignPatterns)
            for (const auto& mr : mrs_for(p, mp)) {
                CAPTURE(mr.id);
                CHECK(mr.region.lo >= dom.lo);
                CHECK(mr.region.hi <= dom.hi);
                for (std::uint64_t s = 0; s < 4; ++s)
                    for (double x : mr_inputs(mr.id, mr.region, MrContext{s, s, {}}, 8)) {
                        CHECK(mr.region.contains(x));
                        double y = mr.transform(x);
                        CHECK(dom.contains(y));
                    }
            }
    }
}

TEST_CASE("unmutated PUTs pass every catalogue MR") {
    for (PutId p : kAllPuts)
        for (MetaPattern mp : kCampaignPatterns)
            for (const auto& mr : mrs_for(p, mp))
                for (std::uint64_t s : {1ULL, 42ULL}) {
                    CAPTURE(mr.id);
                    CAPTURE(s);
                    auto v = avp_verify(original_program(p), mr, s);
                    CAPTURE(v.detail);
                    CHECK(v.passed());
                }
}

TEST_CASE("MP1 baseline pass rate is at least 99 percent") {
    for (PutId p : kAllPuts)
        for (const auto& mr : mrs_for(p, MetaPattern::MP1)) {
            CAPTURE(mr.id);
            int passes = 0, total = 0;
            for (std::uint64_t s = 0; s < 100; ++s, ++total)
                passes += avp_verify(original_program(p), mr, derive_seed({s, 0x3e1})).passed();
            CHECK(passes >= 99 * total / 100);
        }
}

TEST_CASE("equality pattern relation") {
    const Program& a2 = original_program(PutId::A2);
    MrInstance eq = equality_pattern_mr(a2, 50);
    CHECK(eq.mp == MetaPattern::Eq);
    CHECK(eq.exact);
    CHECK(eq.method() == VerificationMethod::exact_equality);
    CHECK(avp_verify(a2, eq, 9).passed());
    Program shifted(PutId::A2, a2.domain(), [&](const Query& q) { return a2(q) + 1e-12; });
    CHECK_FALSE(avp_verify(shifted, eq, 9).passed());
}
