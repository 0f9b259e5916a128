#include "helpers.hpp"
#include "semmut/kernels/class_b.hpp"

namespace semmut {

using namespace relations;
using namespace kernels;
using enum MetaPattern;

namespace {

std::vector<MrInstance> beta_binomial(MetaPattern mp) {
    constexpr auto P = PutId::B1;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "sequential one-trial updates equal the batch posterior mean",
                            {0.5, 10}, identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kBetaSequential), at(p, x, s, kBetaMean)};
                            }),
                equality_mr(mr_id(P, MP1, 2), P, "swapping success and failure labels maps the mean m to 1 - m",
                            {0.5, 10}, identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kBetaSwapped), 1.0 - at(p, x, s, kBetaMean)};
                            }),
            };
        case MP2:
            return {ordering_mr(mr_id(P, MP2, 1), P, MP2, "posterior mean increases in alpha: alpha -> alpha + 0.5",
                                {0.5, 9.5}, shift_transform(0.5),
                                [](const Program& p, double x, double y, std::uint64_t s) {
                                    return at(p, x, s, kBetaMean) - at(p, y, s, kBetaMean);
                                })};
        case MP5:
            return {ordering_mr(mr_id(P, MP5, 1), P, MP5, "posterior mean lies between the prior mean and the MLE",
                                {0.5, 10}, identity_transform(),
                                [](const Program& p, double x, double, std::uint64_t s) {
                                    double m = at(p, x, s, kBetaMean);
                                    return (m - at(p, x, s, kBetaPriorMean)) * (m - at(p, x, s, kBetaMle));
                                })};
        default: return {};
    }
}

std::vector<MrInstance> metropolis(MetaPattern mp) {
    constexpr auto P = PutId::B2;
    switch (mp) {
        case MP1:
            return {equality_mr(mr_id(P, MP1, 1), P,
                                "common random numbers: shifting the target by 0.5 shifts the chain mean by 0.5",
                                {-2, 1.5}, shift_transform(0.5), 6,
                                [](const Program& p, double x, double y, std::uint64_t s) {
                                    return std::pair{at(p, y, s, kChainMean) - 0.5, at(p, x, s, kChainMean)};
                                })};
        case MP2:
            return {
                ordering_mr(mr_id(P, MP2, 1), P, MP2, "common random numbers: chain mean increases with mu (+0.5)",
                            {-2, 1.5}, shift_transform(0.5),
                            [](const Program& p, double x, double y, std::uint64_t s) {
                                return at(p, x, s, kChainMean) - at(p, y, s, kChainMean);
                            }),
                ordering_mr(mr_id(P, MP2, 2), P, MP2,
                            "halving the proposal step at least halves the rejection rate (factor 0.7 slack)",
                            {-2, 2}, identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kChainRejectFine) - 0.7 * at(p, x, s, kChainRejectCoarse);
                            }),
            };
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "doubling the chain length: seed-to-seed spread of the mean at order 1/2",
                               {-2, 2}, identity_transform(), 1, 0.5, 0.25,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return seed_spread(p, x, s, kChainMean, 4, 32);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P,
                               "doubling the chain length: seed-to-seed spread of the second moment at order 1/2",
                               {-2, 2}, identity_transform(), 1, 0.5, 0.25,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return seed_spread(p, x, s, kChainSecondMoment, 4, 32);
                               }),
            };
        case MP4:
            return {
                trajectory_mr(mr_id(P, MP4, 1), P, "common random numbers: running mean at mu + 0.5, less 0.5, tracks mu",
                              {-2, 1.5}, shift_transform(0.5),
                              [](const Program& p, double x, double y, std::uint64_t s) {
                                  auto a = path(p, y, s);
                                  for (double& v : a) v -= 0.5;
                                  return std::pair{a, path(p, x, s)};
                              }),
                trajectory_mr(mr_id(P, MP4, 2), P, "running means under two seeds stay within eps_DTW", {-2, 2},
                              identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  return std::pair{path(p, x, s), path(p, x, other_seed(s))};
                              }),
            };
        case MP5:
            return {ordering_mr(mr_id(P, MP5, 1), P, MP5, "a 4x longer chain is not further from the target mean",
                                {-2, 2}, identity_transform(),
                                [](const Program& p, double x, double, std::uint64_t s) {
                                    double e0 = at(p, x, s, kChainMean, 0) - x;
                                    double e2 = at(p, x, s, kChainMean, 2) - x;
                                    return e2 * e2 - e0 * e0;
                                })};
        default: return {};
    }
}

std::vector<MrInstance> importance(MetaPattern mp) {
    constexpr auto P = PutId::B3;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "integrand g -> 2g doubles the estimate (same draws)", {0.5, 5},
                            identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kIsScaled), 2.0 * at(p, x, s, kIsEstimate)};
                            }),
                equality_mr(mr_id(P, MP1, 2), P, "integrand g -> g + 1 adds the estimate of the constant 1",
                            {0.5, 5}, identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kIsShifted),
                                                 at(p, x, s, kIsEstimate) + at(p, x, s, kIsConstant)};
                            }),
            };
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "doubling the sample size: seed-to-seed spread at order 1/2",
                               {0.5, 5}, identity_transform(), 1, 0.5, 0.25,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return seed_spread(p, x, s, kIsEstimate, 4, 32);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P,
                               "doubling the sample size: spread for integrand g + 1 at order 1/2", {0.5, 5},
                               identity_transform(), 1, 0.5, 0.25,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return seed_spread(p, x, s, kIsShifted, 4, 32);
                               }),
            };
        case MP4:
            return {trajectory_mr(mr_id(P, MP4, 1), P, "running estimates under two seeds stay within eps_DTW",
                                  {0.5, 5}, identity_transform(),
                                  [](const Program& p, double x, double, std::uint64_t s) {
                                      return std::pair{path(p, x, s), path(p, x, other_seed(s))};
                                  })};
        default: return {};
    }
}

}  // namespace

std::vector<MrInstance> class_b_relations(PutId put, MetaPattern mp) {
    switch (put) {
        case PutId::B1: return beta_binomial(mp);
        case PutId::B2: return metropolis(mp);
        default: return importance(mp);
    }
}

}  // namespace semmut
