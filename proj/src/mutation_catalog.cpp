#include "semmut/mutation_catalog.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "mutants/draft.hpp"
#include "semmut/kernel_catalog.hpp"

namespace semmut {

std::string_view to_string(MutantKind k) { return k == MutantKind::semantic ? "semantic" : "syntactic"; }

SemanticityFlags class_flags(OperatorClass op) {
    switch (op) {
        case OperatorClass::CE: return {false, true, false};
        case OperatorClass::OS: return {true, true, false};
        case OperatorClass::HP: return {false, true, false};
        case OperatorClass::TF: return {false, true, true};
        case OperatorClass::SI: return {false, true, true};
    }
    fail(ErrorKind::UnknownOperator, "operator class out of range");
}

std::vector<double> default_probes(PutId put) {
    const Interval d = descriptor(put).input_domain;
    std::vector<double> probes{d.lo};
    for (int i = 1; i <= 16; ++i) probes.push_back(d.at(i / 17.0));
    probes.push_back(d.hi);
    return probes;
}

PrescreenVerdict l0_prescreen(const MutantRecord& m, std::span<const double> probes) {
    const Program& original = original_program(m.put);
    bool differs = false;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        Query q{probes[i], i, 0, 0};
        double y;
        try {
            y = m.program(q);
        } catch (const std::exception& e) {
            return {false, std::string("error: ") + e.what()};
        }
        if (!std::isfinite(y)) return {false, "non-finite"};
        if (std::abs(y - original(q)) > 1e-6) differs = true;
    }
    if (!differs) return {false, "trivial"};
    return {true, {}};
}

namespace {

struct Entry {
    std::vector<MutantRecord> mutants;
    std::vector<bool> accepted;
};

const Entry& entry(PutId put) {
    static std::array<std::once_flag, 12> once;
    static std::array<Entry, 12> table;
    const std::size_t i = index_of(put);
    std::call_once(once[i], [&] {
        Entry& e = table[i];
        switch (class_of(put)) {
            case PutClass::A: e.mutants = mutants::class_a_mutants(put); break;
            case PutClass::B: e.mutants = mutants::class_b_mutants(put); break;
            case PutClass::C: e.mutants = mutants::class_c_mutants(put); break;
            case PutClass::D: e.mutants = mutants::class_d_mutants(put); break;
        }
        const auto probes = default_probes(put);
        for (const auto& m : e.mutants) e.accepted.push_back(l0_prescreen(m, probes).accepted);
    });
    return table[i];
}

}  // namespace

const std::vector<MutantRecord>& authored(PutId put) {
    class_of(put);
    return entry(put).mutants;
}

std::size_t authored_count(PutId put, OperatorClass op) {
    std::size_t n = 0;
    for (const auto& m : authored(put)) n += m.op == op;
    return n;
}

std::vector<MutantRecord> catalog(PutId put, OperatorClass op) {
    class_of(put);
    const Entry& e = entry(put);
    std::vector<MutantRecord> out;
    for (std::size_t i = 0; i < e.mutants.size(); ++i)
        if (e.accepted[i] && e.mutants[i].op == op) out.push_back(e.mutants[i]);
    return out;
}

std::vector<MutantRecord> pool(PutId put) {
    std::vector<MutantRecord> out;
    for (auto op : kAllOperators) {
        auto c = catalog(put, op);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<MutantRecord> syntactic_mutants(PutId put) {
    if (class_of(put) != PutClass::A)
        fail(ErrorKind::NotDeterministicClass, std::string(to_string(put)) + " is not an A-class PUT");
    return mutants::class_a_syntactic(put);
}

}  // namespace semmut
