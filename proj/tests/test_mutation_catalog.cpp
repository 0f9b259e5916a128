#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "semmut/kernel_catalog.hpp"
#include "semmut/mutation_catalog.hpp"

using namespace semmut;

namespace {

bool has_description(const std::vector<MutantRecord>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const auto& m) { return m.description.find(needle) != std::string::npos; });
}

MutantRecord wrap(PutId put, Program::ScalarFn f) {
    MutantRecord m;
    m.id = "fixture";
    m.put = put;
    m.program = Program(put, descriptor(put).input_domain, std::move(f));
    return m;
}

}  // namespace

TEST_CASE("catalogue exemplars") {
    CHECK(has_description(catalog(PutId::A1, OperatorClass::TF), "y/z swap"));
    CHECK(has_description(catalog(PutId::B2, OperatorClass::OS), "min(1, r) -> min(0.95, r)"));
    CHECK(has_description(catalog(PutId::A2, OperatorClass::SI), "partial pivoting degrades to no pivoting"));
    CHECK(has_description(catalog(PutId::A1, OperatorClass::TF), "1.5-order hybrid"));
    try {
        catalog(static_cast<PutId>(99), OperatorClass::CE);
        FAIL("expected UnknownPut");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownPut);
    }
}

TEST_CASE("pools") {
    for (PutId p : kAllPuts) {
        CAPTURE(to_string(p));
        auto v = pool(p);
        CHECK(v.size() >= 10);
        CHECK(v.size() <= 30);
        std::set<std::string> ids;
        for (const auto& m : v) {
            CHECK(m.put == p);
            CHECK(m.kind == MutantKind::semantic);
            CHECK(ids.insert(m.id).second);
        }
        std::size_t sum = 0;
        for (OperatorClass op : kAllOperators) sum += catalog(p, op).size();
        CHECK(sum == v.size());
        // Stable membership: the catalogue is data.
        auto again = pool(p);
        REQUIRE(again.size() == v.size());
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(again[i].id == v[i].id);
    }
}

TEST_CASE("every operator class is populated on every PUT") {
    int puts_meeting = 0;
    for (PutId p : kAllPuts) {
        int ops = 0;
        for (OperatorClass op : kAllOperators) {
            CHECK_FALSE(catalog(p, op).empty());
            ops += catalog(p, op).size() >= 5;
        }
        puts_meeting += ops >= 4;
    }
    // Necessary condition for the non-equivalence form checked on campaign output.
    CHECK(puts_meeting >= 9);
}

TEST_CASE("semanticity flags follow the per-class pattern") {
    CHECK(class_flags(OperatorClass::OS) == SemanticityFlags{true, true, false});
    CHECK(class_flags(OperatorClass::HP) == SemanticityFlags{false, true, false});
    CHECK(class_flags(OperatorClass::TF) == SemanticityFlags{false, true, true});
    CHECK(class_flags(OperatorClass::SI) == SemanticityFlags{false, true, true});
    CHECK_FALSE(class_flags(OperatorClass::CE).crosses_boundary_a);
    CHECK_FALSE(class_flags(OperatorClass::CE).changes_class_c);
    for (PutId p : kAllPuts)
        for (const auto& m : authored(p)) {
            CAPTURE(m.id);
            CHECK(m.flags.any());
            CHECK(m.flags == class_flags(m.op));
            CHECK(m.changed_parameters >= 1);
            CHECK(!m.description.empty());
        }
}

TEST_CASE("artefact fixtures exist in every PUT class") {
    int per_class[4] = {};
    for (PutId p : kAllPuts)
        for (const auto& m : authored(p)) per_class[static_cast<int>(class_of(p))] += m.artefact_flag;
    for (int n : per_class) CHECK(n >= 2);
}

TEST_CASE("L0 prescreen") {
    auto probes = default_probes(PutId::A2);
    CHECK(probes.size() == 18);
    CHECK(probes.front() == descriptor(PutId::A2).input_domain.lo);
    CHECK(probes.back() == descriptor(PutId::A2).input_domain.hi);

    auto same = wrap(PutId::A2, [](const Query& q) { return original_program(PutId::A2)(q); });
    auto v = l0_prescreen(same, probes);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == "trivial");

    auto nan = wrap(PutId::A2, [](const Query&) { return std::numeric_limits<double>::quiet_NaN(); });
    v = l0_prescreen(nan, probes);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == "non-finite");

    auto throwing = wrap(PutId::A2, [](const Query&) -> double { throw std::runtime_error("boom"); });
    v = l0_prescreen(throwing, probes);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason.rfind("error:", 0) == 0);

    auto tiny = wrap(PutId::A2, [](const Query& q) { return original_program(PutId::A2)(q) + 1e-7; });
    CHECK_FALSE(l0_prescreen(tiny, probes).accepted);

    for (const auto& m : catalog(PutId::A2, OperatorClass::SI))
        if (m.description.find("no pivoting") != std::string::npos) CHECK(l0_prescreen(m, probes).accepted);

    // Pool entries are exactly the accepted authored mutants.
    for (PutId p : kAllPuts) {
        std::size_t accepted = 0;
        for (const auto& m : authored(p)) accepted += l0_prescreen(m, default_probes(p)).accepted;
        CHECK(accepted == pool(p).size());
    }
}

TEST_CASE("syntactic mutants") {
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) {
        auto v = syntactic_mutants(p);
        CHECK(v.size() >= 5);
        for (const auto& m : v) {
            CHECK(m.kind == MutantKind::syntactic);
            CHECK_FALSE(m.flags.any());
            CHECK(m.put == p);
            CHECK((m.rule == "CRP" || m.rule == "AOR" || m.rule == "ROR"));
        }
    }
    auto a2 = syntactic_mutants(PutId::A2);
    CHECK(std::any_of(a2.begin(), a2.end(), [](const auto& m) { return m.rule == "CRP"; }));
    for (PutId p : {PutId::B2, PutId::C1, PutId::D3}) {
        try {
            syntactic_mutants(p);
            FAIL("expected NotDeterministicClass");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotDeterministicClass);
        }
    }
}
