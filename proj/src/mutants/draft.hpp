#pragma once

#include <functional>
#include <string>
#include <vector>

#include "semmut/mutation_catalog.hpp"

namespace semmut::mutants {

template <typename P>
struct Draft {
    OperatorClass op;
    std::string description;
    std::function<void(P&)> edit;
    int changed = 1;
    bool artefact = false;
};

template <typename P>
struct SyntacticDraft {
    std::string rule;
    std::string description;
    std::function<void(P&)> edit;
};

// Ids run A1-CE-1, A1-CE-2, ... in authoring order within each operator.
template <typename P, typename Make>
std::vector<MutantRecord> author(PutId put, const P& base, Make make, const std::vector<Draft<P>>& drafts) {
    std::vector<MutantRecord> out;
    int counter[5] = {0, 0, 0, 0, 0};
    for (const auto& d : drafts) {
        P p = base;
        d.edit(p);
        MutantRecord m;
        m.put = put;
        m.op = d.op;
        m.id = std::string(to_string(put)) + "-" + std::string(to_string(d.op)) + "-" +
               std::to_string(++counter[index_of(d.op)]);
        m.flags = class_flags(d.op);
        m.artefact_flag = d.artefact;
        m.description = d.description;
        m.changed_parameters = d.changed;
        m.program = make(p);
        out.push_back(std::move(m));
    }
    return out;
}

template <typename P, typename Make>
std::vector<MutantRecord> author_syntactic(PutId put, const P& base, Make make,
                                           const std::vector<SyntacticDraft<P>>& drafts) {
    std::vector<MutantRecord> out;
    int n = 0;
    for (const auto& d : drafts) {
        P p = base;
        d.edit(p);
        MutantRecord m;
        m.put = put;
        m.kind = MutantKind::syntactic;
        m.id = std::string(to_string(put)) + "-SYN-" + std::to_string(++n);
        m.rule = d.rule;
        m.description = d.description;
        m.program = make(p);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<MutantRecord> class_a_mutants(PutId put);
std::vector<MutantRecord> class_b_mutants(PutId put);
std::vector<MutantRecord> class_c_mutants(PutId put);
std::vector<MutantRecord> class_d_mutants(PutId put);
std::vector<MutantRecord> class_a_syntactic(PutId put);

}  // namespace semmut::mutants
