#include "helpers.hpp"
#include "semmut/kernels/class_a.hpp"

namespace semmut {

using namespace relations;
using namespace kernels;
using enum MetaPattern;

namespace {

Transform negate() {
    return [](double x) { return -x; };
}

std::vector<MrInstance> lorenz(MetaPattern mp) {
    constexpr auto P = PutId::A1;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "(x, y) -> (-x, -y) leaves z(T) unchanged", {-10, 10}, negate(), 6,
                            [](const Program& p, double x, double y, std::uint64_t s) {
                                return std::pair{at(p, x, s, kLorenzScalar), at(p, y, s, kLorenzScalar)};
                            }),
                equality_mr(mr_id(P, MP1, 2), P, "integrating [0, T/2] then [T/2, T] equals one run over [0, T]",
                            {-10, 10}, identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kLorenzScalar), at(p, x, s, kLorenzSplit)};
                            }),
            };
        case MP2:
            return {ordering_mr(mr_id(P, MP2, 1), P, MP2, "short-horizon z grows with |x|: x -> x + 0.5 on [0, 9.5]",
                                {0, 9.5}, shift_transform(0.5),
                                [](const Program& p, double x, double y, std::uint64_t s) {
                                    return at(p, x, s, kLorenzShort) - at(p, y, s, kLorenzShort);
                                })};
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "halving dt: z(T) converges at order 4", {-10, 10},
                               identity_transform(), 4, 4.0, 0.5,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, kLorenzScalar, {2, 3, 4}, 7);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P, "halving dt: x(T) converges at order 4", {-10, 10},
                               identity_transform(), 4, 4.0, 0.5,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, 3, {2, 3, 4}, 7);
                               }),
            };
        case MP4:
            return {
                trajectory_mr(mr_id(P, MP4, 1), P, "z-trajectory invariant under (x, y) -> (-x, -y)", {-10, 10},
                              negate(),
                              [](const Program& p, double x, double y, std::uint64_t s) {
                                  return std::pair{path(p, x, s), path(p, y, s)};
                              }),
                trajectory_mr(mr_id(P, MP4, 2), P, "z-trajectories at dt and dt/2 stay within eps_DTW", {-10, 10},
                              identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  return std::pair{path(p, x, s, 0, 0), path(p, x, s, 0, 1)};
                              }),
            };
        default: return {};
    }
}

std::vector<MrInstance> lu(MetaPattern mp) {
    constexpr auto P = PutId::A2;
    auto pair_of = [](int lv, double lscale, int rv, double rscale) {
        return [=](const Program& p, double x, double, std::uint64_t s) {
            return std::pair{lscale * at(p, x, s, lv), rscale * at(p, x, s, rv)};
        };
    };
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "det(A^T) = det(A)", {0.5, 2}, identity_transform(), 6,
                            pair_of(kLuDetTransposed, 1.0, kLuDet, 1.0)),
                equality_mr(mr_id(P, MP1, 2), P, "swapping rows 1 and 3 negates det(A)", {0.5, 2},
                            identity_transform(), 6, pair_of(kLuDetSwapped, -1.0, kLuDet, 1.0)),
                equality_mr(mr_id(P, MP1, 3), P, "scaling row 2 by 2 doubles det(A)", {0.5, 2}, identity_transform(), 6,
                            pair_of(kLuDetScaledRow, 1.0, kLuDet, 2.0)),
                equality_mr(mr_id(P, MP1, 4), P, "(A, b) -> (2A, 2b) leaves the solution unchanged", {0.5, 2},
                            identity_transform(), 6, pair_of(kLuSolutionScaled, 1.0, kLuSolution, 1.0)),
                equality_mr(mr_id(P, MP1, 5), P, "reversing the row order of (A, b) leaves the solution unchanged",
                            {0.5, 2}, identity_transform(), 6, pair_of(kLuSolutionReversed, 1.0, kLuSolution, 1.0)),
            };
        case MP3:
            return {convergence_mr(mr_id(P, MP3, 1), P,
                                   "central difference of the solution in x converges at order 2 (h = 0.1 / 2^k)",
                                   {0.7, 1.8}, identity_transform(), 2, 2.0, 0.3,
                                   [](const Program& p, double x, double, std::uint64_t s) {
                                       auto diff = [&](double h) {
                                           return (at(p, x + h, s, kLuSolution) - at(p, x - h, s, kLuSolution)) / (2 * h);
                                       };
                                       double ref = diff(0.1 / 64);
                                       std::vector<std::pair<double, double>> out;
                                       for (int k = 0; k < 3; ++k) {
                                           double h = 0.1 * std::ldexp(1.0, -k);
                                           out.emplace_back(h, std::abs(diff(h) - ref));
                                       }
                                       return out;
                                   })};
        case MP4:
            return {trajectory_mr(mr_id(P, MP4, 1), P,
                                  "solution sweep over x unchanged when the rows of (A, b) are reversed", {0.5, 2},
                                  identity_transform(),
                                  [](const Program& p, double x, double, std::uint64_t s) {
                                      return std::pair{path(p, x, s, kLuSolution), path(p, x, s, kLuSolutionReversed)};
                                  })};
        case MP5:
            return {
                ordering_mr(mr_id(P, MP5, 1), P, MP5, "residual ||Ax - b|| <= 1e-10 (backward stability)", {0.5, 2},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kLuResidual) - 1e-10;
                            }),
                ordering_mr(mr_id(P, MP5, 2), P, MP5, "row-reversed system: residual <= 1e-10", {0.5, 2},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kLuResidualReversed) - 1e-10;
                            }),
                ordering_mr(mr_id(P, MP5, 3), P, MP5, "one refinement step never increases the residual", {0.5, 2},
                            identity_transform(),
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return at(p, x, s, kLuResidual, 1) - at(p, x, s, kLuResidual, 0) - 1e-13;
                            }),
            };
        default: return {};
    }
}

std::vector<MrInstance> heat(MetaPattern mp) {
    constexpr auto P = PutId::A3;
    switch (mp) {
        case MP1:
            return {
                equality_mr(mr_id(P, MP1, 1), P, "doubling the initial amplitude doubles u(1/2, T)", {0.1, 1},
                            identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kHeatDoubled), 2.0 * at(p, x, s, kHeatCentre)};
                            }),
                equality_mr(mr_id(P, MP1, 2), P, "mirror symmetry: u(1/4, T) = u(3/4, T)", {0.1, 1},
                            identity_transform(), 6,
                            [](const Program& p, double x, double, std::uint64_t s) {
                                return std::pair{at(p, x, s, kHeatQuarter), at(p, x, s, kHeatThreeQuarter)};
                            }),
            };
        case MP2:
            return {ordering_mr(mr_id(P, MP2, 1), P, MP2, "u(1/2, T) decreases in kappa: kappa -> kappa + 0.05",
                                {0.1, 0.95}, shift_transform(0.05),
                                [](const Program& p, double x, double y, std::uint64_t s) {
                                    return at(p, y, s, kHeatCentre) - at(p, x, s, kHeatCentre);
                                })};
        case MP3:
            return {
                convergence_mr(mr_id(P, MP3, 1), P, "halving h: u(1/2, T) converges at order 2", {0.1, 1},
                               identity_transform(), 2, 2.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, kHeatCentre, {0, 1, 2}, 4);
                               }),
                convergence_mr(mr_id(P, MP3, 2), P, "halving h: u(1/4, T) converges at order 2", {0.1, 1},
                               identity_transform(), 2, 2.0, 0.3,
                               [](const Program& p, double x, double, std::uint64_t s) {
                                   return refinement_errors(p, x, s, kHeatQuarter, {0, 1, 2}, 4);
                               }),
            };
        case MP4:
            return {
                trajectory_mr(mr_id(P, MP4, 1), P, "centre series of the doubled initial state, halved, matches the original",
                              {0.1, 1}, identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  auto a = path(p, x, s, kHeatDoubled);
                                  for (double& v : a) v *= 0.5;
                                  return std::pair{a, path(p, x, s, kHeatCentre)};
                              }),
                trajectory_mr(mr_id(P, MP4, 2), P, "centre series at h and h/2 stay within eps_DTW", {0.1, 1},
                              identity_transform(),
                              [](const Program& p, double x, double, std::uint64_t s) {
                                  return std::pair{path(p, x, s, kHeatCentre, 0), path(p, x, s, kHeatCentre, 1)};
                              }),
            };
        default: return {};
    }
}

}  // namespace

std::vector<MrInstance> class_a_relations(PutId put, MetaPattern mp) {
    switch (put) {
        case PutId::A1: return lorenz(mp);
        case PutId::A2: return lu(mp);
        default: return heat(mp);
    }
}

}  // namespace semmut
