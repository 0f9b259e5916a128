#include "semmut/kernel_catalog.hpp"

#include <array>
#include <cmath>

#include "semmut/kernels/class_a.hpp"
#include "semmut/kernels/class_b.hpp"
#include "semmut/kernels/class_c.hpp"
#include "semmut/kernels/class_d.hpp"

namespace semmut {

namespace {

Program build(PutId id) {
    using namespace kernels;
    switch (id) {
        case PutId::A1: return make_lorenz();
        case PutId::A2: return make_lu_system();
        case PutId::A3: return make_heat();
        case PutId::B1: return make_beta_binomial();
        case PutId::B2: return make_metropolis();
        case PutId::B3: return make_importance();
        case PutId::C1: return make_gp();
        case PutId::C2: return make_pce();
        case PutId::C3: return make_surrogate(default_surrogate());
        case PutId::D1: return make_classifier(default_classifier());
        case PutId::D2: return make_svm();
        case PutId::D3: return make_logistic();
    }
    fail(ErrorKind::UnknownPut, "unknown PUT");
}

std::vector<PutDescriptor> descriptors() {
    std::vector<PutDescriptor> out;
    auto add = [&](PutId id, std::string name, std::string structure, double ood, bool stochastic) {
        const Program& p = original_program(id);
        out.push_back({id, std::move(name), std::move(structure), p.domain(), ood, p.has_trajectory(), stochastic});
    };
    add(PutId::A1, "lorenz_rk4", "RK4 integration of Lorenz-63 from (x, x, 20); output z at the horizon", 0.05, false);
    add(PutId::A2, "lu_solve", "partial-pivoting LU solve of a 5x5 system M + x u v^T with a tiny leading entry; output solution component 0", 0.05, false);
    add(PutId::A3, "heat_ftcs", "explicit FTCS scheme for u_t = x u_xx on [0, 1]; output centre temperature", 0.05, false);
    add(PutId::B1, "beta_binomial", "conjugate Beta-Binomial posterior; x = prior alpha, output posterior mean", 0.05, false);
    add(PutId::B2, "metropolis", "random-walk Metropolis on N(x, 1) started at x - 3; output chain mean", 0.05, true);
    add(PutId::B3, "importance_sampling", "importance-sampling estimate of int_0^1 exp(-x u^2) du; output estimate", 0.05, true);
    add(PutId::C1, "gp_regression", "Gaussian process regression with an RBF kernel; x = prediction point, output posterior mean", 0.05, false);
    add(PutId::C2, "pce", "Legendre polynomial chaos of exp(a xi); x = a, output captured variance", 0.05, false);
    add(PutId::C3, "mlp_surrogate", "one-hidden-layer network surrogate of 1 - exp(-t); x = t, output prediction", 0.05, true);
    add(PutId::D1, "mlp_classifier", "one-hidden-layer classifier trained with cross-entropy; x = query, output P(y = 1)", 0.05, true);
    add(PutId::D2, "l2_svm", "linear squared-hinge SVM trained by gradient descent; x = query, output decision value", 0.05, false);
    add(PutId::D3, "logistic_newton", "L2-regularised logistic regression fitted by Newton; x = query, output P(y = 1)", 0.05, false);
    return out;
}

}  // namespace

const Program& original_program(PutId id) {
    static const std::array<Program, 12> programs = [] {
        std::array<Program, 12> a;
        for (PutId p : kAllPuts) a[index_of(p)] = build(p);
        return a;
    }();
    return programs[index_of(id)];
}

const std::vector<PutDescriptor>& list_puts() {
    static const std::vector<PutDescriptor> all = descriptors();
    return all;
}

const PutDescriptor& descriptor(PutId id) { return list_puts()[index_of(id)]; }

double evaluate_put(PutId id, double x, std::uint64_t seed) {
    return original_program(id).checked(Query{x, seed, 0, 0});
}

std::vector<double> evaluate_trajectory(PutId id, double x, std::uint64_t seed, int steps) {
    const Program& p = original_program(id);
    if (!p.has_trajectory()) fail(ErrorKind::NotTrajectoryCapable, std::string(to_string(id)) + " has no trajectory");
    if (!std::isfinite(x) || !p.domain().contains(x))
        fail(ErrorKind::DomainViolation, std::string(to_string(id)) + ": x = " + std::to_string(x) + " outside the domain");
    auto out = p.trajectory(Query{x, seed, 0, 0}, steps);
    for (double v : out)
        if (!std::isfinite(v)) fail(ErrorKind::NonFiniteOutput, std::string(to_string(id)) + " trajectory");
    return out;
}

}  // namespace semmut
