#include "helpers.hpp"
#include "semmut/kernels/class_c.hpp"

namespace semmut {

using namespace relations;
using namespace kernels;
using enum MetaPattern;

namespace {

// |v(variant, f) - v(base variant, 0)| for f = 2..4: a perturbation of size
// 2^-f that should vanish at first order.
std::vector<std::pair<double, double>> perturbation_errors(const Program& p, double x, std::uint64_t s, int variant,
                                                           int base) {
    double ref = at(p, x, s, base, 0);
    std::vector<std::pair<double, double>> out;
    for (int f = 2; f <= 4; ++f) out.emplace_back(std::ldexp(1.0, -f), std::abs(at(p, x, s, variant, f) - ref));
    return out;
}

std::vector<MrInstance> gp(MetaPattern mp) {
    constexpr auto P = PutId::C1;
    switch (mp) {
        case MP1:
            return {equality_mr(mr_id(P, MP1, 1), P, "permuting the training set leaves the posterior mean unchanged",
                                {0, 1}, identity_transform(), 6,
                                [](const Program& p, double x, double, std::uint64_t s) {
                                    return std::pair{at(p, x, s, kGpMeanPermuted), at(p, x, s, kGpMean)};
                                })};
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "noise / 10 never increases the posterior variance", {0, 1},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kGpVarianceLowNoise) - at(p, x, s, kGpVariance);
                            }),
                ordering_mr(mr_id(P, MP2, 2), P, MP2,
                            "beyond the training hull the variance grows with distance: x -> x + 0.01 on [0.95, 0.99]",
                            {0.95, 0.99}, shift_transform(0.01),
                            [](const Program& p, double x, double y, std::uint64_t s) {
                                return at(p, x, s, kGpVariance) - at(p, y, s, kGpVariance);
                            }),
            };
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "length scale perturbed by 0.2 * 2^-f: mean converges at order 1",
                               {0, 1}, identity_transform(), 3, 1.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return perturbation_errors(p, x, s, kGpMeanLengthPerturbed, kGpMean);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P, "noise perturbed by 1e-3 * 2^-f: mean converges at order 1",
                               {0, 1}, identity_transform(), 3, 1.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return perturbation_errors(p, x, s, kGpMeanNoisePerturbed, kGpMean);
                               }),
            };
        case MP4:
            return {trajectory_mr(mr_id(P, MP4, 1), P, "mean sweeps with 8 and 15 training points stay within eps_DTW",
                                  {0, 1}, identity_transform(),
                                  [](const Program& p, double x, double, std::uint64_t s) {
                                      return std::pair{path(p, x, s, kGpMean, 0), path(p, x, s, kGpMean, 1)};
                                  })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "nested denser data never increases the posterior variance",
                            {0, 1}, identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kGpVariance, 1) - at(p, x, s, kGpVariance, 0);
                            }),
                ordering_mr(mr_id(P, MP5, 2), P, MP5,
                            "denser data never moves the mean further from the densest fit", {0, 1},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                double ref = at(p, x, s, kGpMean, 3);
                                return std::abs(at(p, x, s, kGpMean, 1) - ref) - std::abs(at(p, x, s, kGpMean, 0) - ref);
                            }),
            };
        default: return {};
    }
}

std::vector<MrInstance> pce(MetaPattern mp) {
    constexpr auto P = PutId::C2;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "coefficient c0 equals the directly integrated mean", {0.2, 2},
                            identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kPceMean), at(p, x, s, kPceDirectMean)};
                            }),
                equality_mr(mr_id(P, MP1, 2), P, "model g -> 2g multiplies the variance by 4", {0.2, 2},
                            identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kPceScaledVariance), 4.0 * at(p, x, s, kPceVariance)};
                            }),
            };
        case MP2:
            return {ordering_mr(mr_id(P, MP2, 1), P, MP2, "variance increases with a: a -> a + 0.2", {0.2, 1.8},
                                shift_transform(0.2),
                                [](const Program& p, double x, double y, std::uint64_t s) {
                                    return at(p, x, s, kPceVariance) - at(p, y, s, kPceVariance);
                                })};
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "halving the quadrature interval: variance converges at order 2",
                               {0.2, 2}, identity_transform(), 2, 2.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, kPceVariance, {0, 1, 2}, 5);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P, "halving the quadrature interval: mean converges at order 2",
                               {0.2, 2}, identity_transform(), 2, 2.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, kPceMean, {0, 1, 2}, 5);
                               }),
            };
        case MP4:
            return {trajectory_mr(mr_id(P, MP4, 1), P, "variance sweeps at two quadrature levels stay within eps_DTW",
                                  {0.2, 2}, identity_transform(),
                                  [](const Program& p, double x, double, std::uint64_t s) {
                                      return std::pair{path(p, x, s, kPceVariance, 0), path(p, x, s, kPceVariance, 1)};
                                  })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "order p - 2 captures no more variance than order p", {0.2, 2},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kPceLowerOrder) - at(p, x, s, kPceVariance);
                            }),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "order p + 2 captures no less variance than order p", {0.2, 2},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kPceVariance) - at(p, x, s, kPceHigherOrder);
                            }),
            };
        default: return {};
    }
}

std::vector<MrInstance> surrogate(MetaPattern mp) {
    constexpr auto P = PutId::C3;
    switch (mp) {
        case MP1:
            return {equality_mr(mr_id(P, MP1, 1), P,
                                "permuting the training set leaves the full-batch prediction unchanged", {0, 3},
                                identity_transform(), 6,
                                [](const Program& p, double x, double, std::uint64_t s) {
                                    return std::pair{at(p, x, s, kSurrogatePermuted), at(p, x, s, kSurrogatePrediction)};
                                },
                                1e-6, true)};
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "prediction increases along the target: t -> t + 0.6",
                            {0, 2.4}, shift_transform(0.6),
                            [](const Program& p, double x, double y, std::uint64_t s) {
                                return at(p, x, s, kSurrogatePrediction) - at(p, y, s, kSurrogatePrediction);
                            },
                            0.05, true),
                ordering_mr(mr_id(P, MP2, 2), P, MP2, "targets x 1.5 do not lower the prediction on [0.5, 3]",
                            {0.5, 3}, identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kSurrogatePrediction) - at(p, x, s, kSurrogateAmplified);
                            },
                            0.05, true),
            };
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P,
                               "halving the learning rate at fixed training time: prediction converges at order 1",
                               {0, 3}, identity_transform(), 2, 1.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return richardson_errors(p, x, s, kSurrogatePrediction, {2, 3, 4}, 6, 1.0);
                               },
                               true),
                convergence_mr(mr_id(P, MP3, 2), P,
                               "halving the learning rate at fixed training time: loss converges at order 1", {0, 3},
                               identity_transform(), 1, 1.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return richardson_errors(p, x, s, kSurrogateLoss, {2, 3, 4}, 6, 1.0);
                               },
                               true),
            };
        case MP4:
            return {
                trajectory_mr(mr_id(P, MP4, 1), P, "prediction sweeps under two seeds stay within eps_DTW", {0, 3},
                              identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  return std::pair{path(p, x, s), path(p, x, other_seed(s))};
                              }),
                trajectory_mr(mr_id(P, MP4, 2), P, "prediction sweeps at lr and lr / 2 stay within eps_DTW", {0, 3},
                              identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  return std::pair{path(p, x, s, 0, 0), path(p, x, s, 0, 1)};
                              }),
            };
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "doubling the epochs never raises the training loss", {0, 3},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kSurrogateLossLong) - at(p, x, s, kSurrogateLoss);
                            },
                            0.05, true),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "halving the epochs never lowers the training loss", {0, 3},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kSurrogateLoss) - at(p, x, s, kSurrogateLossShort);
                            },
                            0.05, true),
            };
        default: return {};
    }
}

}  // namespace

std::vector<MrInstance> class_c_relations(PutId put, MetaPattern mp) {
    switch (put) {
        case PutId::C1: return gp(mp);
        case PutId::C2: return pce(mp);
        default: return surrogate(mp);
    }
}

}  // namespace semmut
