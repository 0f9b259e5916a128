#pragma once

#include <span>
#include <string>
#include <vector>

#include "semmut/program.hpp"
#include "semmut/types.hpp"

namespace semmut {

enum class MutantKind { semantic, syntactic };

std::string_view to_string(MutantKind k);

struct SemanticityFlags {
    bool crosses_boundary_a = false;
    bool domain_knowledge_b = false;
    bool changes_class_c = false;

    bool any() const { return crosses_boundary_a || domain_knowledge_b || changes_class_c; }
    bool operator==(const SemanticityFlags&) const = default;
};

// Per-operator flag pattern carried by every semantic mutant of that class.
SemanticityFlags class_flags(OperatorClass op);

struct MutantRecord {
    std::string id;
    PutId put = PutId::A1;
    // Syntactic mutants carry CE (constant/arithmetic edits) and name their
    // rule (CRP, AOR, ROR) in `rule`.
    OperatorClass op = OperatorClass::CE;
    MutantKind kind = MutantKind::semantic;
    SemanticityFlags flags;
    bool artefact_flag = false;
    std::string rule;
    std::string description;
    int changed_parameters = 1;
    Program program;
};

struct PrescreenVerdict {
    bool accepted = false;
    std::string reason;  // "trivial", "non-finite" or "error: ..."
};

// 16 evenly spaced interior points plus both endpoints of the PUT domain.
std::vector<double> default_probes(PutId put);

PrescreenVerdict l0_prescreen(const MutantRecord& m, std::span<const double> probes);

// Everything authored for a PUT, before the prescreen. Built once.
const std::vector<MutantRecord>& authored(PutId put);
std::size_t authored_count(PutId put, OperatorClass op);

// Prescreen-accepted mutants.
std::vector<MutantRecord> catalog(PutId put, OperatorClass op);
std::vector<MutantRecord> pool(PutId put);

// First-order rule-based variants; A-class only.
std::vector<MutantRecord> syntactic_mutants(PutId put);

}  // namespace semmut
