#include "helpers.hpp"
#include "semmut/kernels/class_d.hpp"

namespace semmut {

using namespace relations;
using namespace kernels;
using enum MetaPattern;

namespace {

// (variant a) - (variant b) at the same input and seed.
ViolationFn gap(int a, int b) {
    return [a, b](const Program& p, double x, double, std::uint64_t s) { return at(p, x, s, a) - at(p, x, s, b); };
}

ViolationFn increasing(int variant) {
    return [variant](const Program& p, double x, double y, std::uint64_t s) {
        return at(p, x, s, variant) - at(p, y, s, variant);
    };
}

PairFn same_as(int a, int b) {
    return [a, b](const Program& p, double x, double, std::uint64_t s) {
        return std::pair{at(p, x, s, a), at(p, x, s, b)};
    };
}

std::vector<MrInstance> classifier(MetaPattern mp) {
    constexpr auto P = PutId::D1;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "permuting the training set leaves the full-batch probability unchanged",
                            {-1, 1}, identity_transform(), 6, same_as(kClassifierPermuted, kClassifierProb), 1e-6, true),
                equality_mr(mr_id(P, MP1, 2), P,
                            "training on reflected inputs and evaluating at -x reproduces the probability", {-1, 1},
                            identity_transform(), 6, same_as(kClassifierMirror, kClassifierProb), 1e-6, true),
            };
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "P(y = 1) increases in x: x -> x + 0.5", {-1, 0.5},
                            shift_transform(0.5), increasing(kClassifierProb), 0.05, true),
                ordering_mr(mr_id(P, MP2, 2), P, MP2, "positive class weight 2 does not lower P(y = 1)", {-1, 1},
                            identity_transform(), gap(kClassifierProb, kClassifierWeighted), 0.05, true),
            };
        case MP3:
            return {convergence_mr(mr_id(P, MP3, 1), P,
                                   "halving the learning rate at fixed training time: probability converges at order 1",
                                   {-1, 1}, identity_transform(), 2, 1.0, 0.3,
                                   [](const Program& p, double x, double, std::uint64_t s) {
                                       return richardson_errors(p, x, s, kClassifierProb, {1, 2, 3}, 5, 1.0);
                                   },
                                   true)};
        case MP4:
            return {trajectory_mr(mr_id(P, MP4, 1), P, "learning curves under two seeds stay within eps_DTW", {-1, 1},
                                  identity_transform(),
                                  [](const Program& p, double x, double, std::uint64_t s) {
                                      return std::pair{path(p, x, s), path(p, x, other_seed(s))};
                                  })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "doubling the epochs never raises the training loss", {-1, 1},
                            identity_transform(), gap(kClassifierLossLong, kClassifierLoss), 0.05, true),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "halving the epochs never lowers the training loss", {-1, 1},
                            identity_transform(), gap(kClassifierLoss, kClassifierLossShort), 0.05, true),
            };
        default: return {};
    }
}

std::vector<MrInstance> svm(MetaPattern mp) {
    constexpr auto P = PutId::D2;
    switch (mp) {
        case MP1:
            return {equality_mr(mr_id(P, MP1, 1), P, "permuting the training set leaves the decision value unchanged",
                                {-1, 1}, identity_transform(), 6, same_as(kSvmPermuted, kSvmDecision))};
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "decision value increases in x: x -> x + 0.5", {-1, 0.5},
                            shift_transform(0.5), increasing(kSvmDecision)),
                ordering_mr(mr_id(P, MP2, 2), P, MP2, "positive class weight 2 does not lower the decision value",
                            {-1, 1}, identity_transform(), gap(kSvmDecision, kSvmWeighted)),
            };
        case MP3:
            return {convergence_mr(mr_id(P, MP3, 1), P,
                                   "halving the step at fixed flow time: early decision value converges at order 1",
                                   {-1, 1}, identity_transform(), 2, 1.0, 0.3,
                                   [](const Program& p, double x, double, std::uint64_t s) {
                                       return richardson_errors(p, x, s, kSvmShortFlow, {1, 2, 3}, 6, 1.0);
                                   })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "40 gradient steps reach no higher objective than 20", {-1, 1},
                            identity_transform(), gap(kSvmObjectiveLong, kSvmObjectiveShort)),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "lambda x 4 never increases |w|", {-1, 1}, identity_transform(),
                            gap(kSvmNormStrong, kSvmNorm)),
            };
        default: return {};
    }
}

std::vector<MrInstance> logistic(MetaPattern mp) {
    constexpr auto P = PutId::D3;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "permuting the training set leaves the probability unchanged",
                            {-2, 2}, identity_transform(), 6, same_as(kLogisticPermuted, kLogisticProb)),
                equality_mr(mr_id(P, MP1, 2), P, "flipping every label maps p to 1 - p", {-2, 2}, identity_transform(),
                            6, [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kLogisticFlipped), 1.0 - at(p, x, s, kLogisticProb)};
                            }),
            };
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "P(y = 1) increases in x: x -> x + 0.5", {-2, 1.5},
                            shift_transform(0.5), increasing(kLogisticProb)),
                ordering_mr(mr_id(P, MP2, 2), P, MP2, "positive class weight 2 does not lower P(y = 1)", {-2, 2},
                            identity_transform(), gap(kLogisticProb, kLogisticWeighted)),
            };
        case MP3:
            return {convergence_mr(mr_id(P, MP3, 1), P,
                                   "regularisation path lambda * 2^-f: probability converges at order 1", {-2, 2},
                                   identity_transform(), 2, 1.0, 0.3,
                                   [](const Program& p, double x, double, std::uint64_t s) {
                                       return richardson_errors(p, x, s, kLogisticPath, {4, 5, 6}, 10, 1.0);
                                   })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "lambda x 4 never lowers the data loss", {-2, 2},
                            identity_transform(), gap(kLogisticDataLoss, kLogisticDataLossStrong)),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "lambda x 4 never increases |w1|", {-2, 2}, identity_transform(),
                            gap(kLogisticNormStrong, kLogisticNorm)),
            };
        default: return {};
    }
}

}  // namespace

std::vector<MrInstance> class_d_relations(PutId put, MetaPattern mp) {
    switch (put) {
        case PutId::D1: return classifier(mp);
        case PutId::D2: return svm(mp);
        default: return logistic(mp);
    }
}

}  // namespace semmut
