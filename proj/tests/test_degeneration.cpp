#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "semmut/degeneration.hpp"
#include "semmut/kernel_catalog.hpp"

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

DegenerateLimitConfig fast() {
    DegenerateLimitConfig c;
    c.k_eq = kMinDegenerateKeq;
    return c;
}

}  // namespace

TEST_CASE("SMS equals classical MS in the degenerate limit") {
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) {
        CAPTURE(to_string(p));
        auto r = check_degeneration(p, fast(), 42);
        CHECK(r.equal);
        CHECK(r.mutants >= 5);
        CHECK(r.equiv_sms == r.equiv_ms);
        CHECK(r.killed_sms == r.killed_ms);
        REQUIRE(r.sms.has_value());
        CHECK(*r.sms == *r.ms);
        CHECK(r.killed_sms > 0);
        CHECK(r.label_histogram[0] == r.killed_sms);
        CHECK(r.suspect_share == 0.0);
        auto mutants = syntactic_mutants(p);
        CHECK(*r.ms == classic_ms(p, mutants, kMinDegenerateKeq, 42));
    }
}

TEST_CASE("every limit axis is required") {
    auto incomplete = [](auto edit) {
        DegenerateLimitConfig c;
        edit(c);
        return kind_of([&] { c.validate(); });
    };
    DegenerateLimitConfig{}.validate();
    CHECK(incomplete([](auto& c) { c.eps_eq = 1e-9; }) == ErrorKind::ConfigIncomplete);
    CHECK(incomplete([](auto& c) { c.k_eq = kMinDegenerateKeq - 1; }) == ErrorKind::ConfigIncomplete);
    CHECK(incomplete([](auto& c) { c.eps_avp = 1e-12; }) == ErrorKind::ConfigIncomplete);
    CHECK(incomplete([](auto& c) { c.equality_pattern_only = false; }) == ErrorKind::ConfigIncomplete);
    CHECK(incomplete([](auto& c) { c.syntactic_operators = false; }) == ErrorKind::ConfigIncomplete);
    CHECK(incomplete([](auto& c) { c.deterministic_puts = false; }) == ErrorKind::ConfigIncomplete);
    DegenerateLimitConfig off;
    off.eps_eq = 1e-6;
    CHECK(kind_of([&] { check_degeneration(PutId::A1, off, 1); }) == ErrorKind::ConfigIncomplete);
}

TEST_CASE("degenerate limit is restricted to deterministic PUTs") {
    for (PutId p : {PutId::B1, PutId::C2, PutId::D3})
        CHECK(kind_of([&] { check_degeneration(p, fast(), 1); }) == ErrorKind::NotDeterministicClass);
    auto semantic = pool(PutId::A2);
    CHECK(kind_of([&] { classic_counts(PutId::A2, semantic, 10, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("classic mutation score") {
    auto mutants = syntactic_mutants(PutId::A2);
    auto c = classic_counts(PutId::A2, mutants, 1000, 5);
    CHECK(c.mutants == static_cast<int>(mutants.size()));
    CHECK(c.equivalent + c.killed == c.mutants);
    CHECK(classic_ms(PutId::A2, mutants, 1000, 5) ==
          doctest::Approx(static_cast<double>(c.killed) / (c.mutants - c.equivalent)));

    // Only mutants that never differ from the original: score undefined.
    std::vector<MutantRecord> same;
    MutantRecord m = mutants.front();
    m.program = original_program(PutId::A2);
    same.push_back(m);
    CHECK(kind_of([&] { classic_ms(PutId::A2, same, 100, 5); }) == ErrorKind::AllEquivalent);
}

TEST_CASE("equivalent counts shrink as k_eq grows") {
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) {
        auto mutants = syntactic_mutants(p);
        int prev = static_cast<int>(mutants.size()) + 1;
        for (std::size_t k : {1, 10, 100, 1000, 10000}) {
            int e = classic_counts(p, mutants, k, 42).equivalent;
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("negative controls") {
    SUBCASE("a perturbed score formula is detected") {
        auto mutants = syntactic_mutants(PutId::A2);
        auto off = [](int i, int e, int k) { return std::nextafter(compute_sms(i, e, k), 2.0); };
        CHECK(kind_of([&] { check_degeneration(PutId::A2, mutants, fast(), 42, off); }) ==
              ErrorKind::MismatchDetected);
    }
    SUBCASE("an artefact label on a kill breaks trivialisation") {
        auto mutants = syntactic_mutants(PutId::A3);
        auto killed = check_degeneration(PutId::A3, mutants, fast(), 42);
        auto it = std::find_if(killed.cell.per_mutant.begin(), killed.cell.per_mutant.end(),
                               [](const auto& o) { return o.state == MutantState::killed; });
        REQUIRE(it != killed.cell.per_mutant.end());
        for (auto& m : mutants)
            if (m.id == it->id) m.artefact_flag = true;
        CHECK(kind_of([&] { check_degeneration(PutId::A3, mutants, fast(), 42); }) ==
              ErrorKind::TrivialisationViolated);
    }
    SUBCASE("trivialisation check on hand-built cells") {
        CellResult cell;
        MutantOutcome m;
        m.state = MutantState::killed;
        m.root_cause = RootCause::C1;
        cell.per_mutant = {m, m};
        auto t = check_lrca_trivialisation(std::span<const CellResult>(&cell, 1));
        CHECK(t.kills == 2);
        CHECK(t.c1_kills == 2);
        CHECK(t.suspect_share == 0.0);
        cell.per_mutant[1].root_cause = RootCause::C2;
        CHECK(kind_of([&] { check_lrca_trivialisation(std::span<const CellResult>(&cell, 1)); }) ==
              ErrorKind::TrivialisationViolated);
    }
}
