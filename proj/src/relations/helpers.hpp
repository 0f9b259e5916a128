#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "semmut/mr_catalog.hpp"
#include "semmut/rng.hpp"

namespace semmut::relations {

inline constexpr int kTrajectorySteps = 50;

inline double at(const Program& p, double x, std::uint64_t seed, int variant, int fidelity = 0) {
    return p(Query{x, seed, fidelity, variant});
}

inline std::vector<double> path(const Program& p, double x, std::uint64_t seed, int variant = 0, int fidelity = 0) {
    return p.trajectory(Query{x, seed, fidelity, variant}, kTrajectorySteps);
}

inline std::string mr_id(PutId put, MetaPattern mp, int n) {
    return std::string(to_string(put)) + "-" + std::string(to_string(mp)) + "-" + std::to_string(n);
}

// (2^-f, |v_f - v_ref|) for f in levels; h halves per level.
inline std::vector<std::pair<double, double>> refinement_errors(const Program& p, double x, std::uint64_t seed,
                                                                int variant, std::vector<int> levels, int reference) {
    double ref = at(p, x, seed, variant, reference);
    std::vector<std::pair<double, double>> out;
    for (int f : levels) out.emplace_back(std::ldexp(1.0, -f), std::abs(at(p, x, seed, variant, f) - ref));
    return out;
}

// As above, but the reference is the Richardson extrapolation of levels
// reference - 1 and reference for a scheme of the given order.
inline std::vector<std::pair<double, double>> richardson_errors(const Program& p, double x, std::uint64_t seed,
                                                                int variant, std::vector<int> levels, int reference,
                                                                double order) {
    double k = std::exp2(order);
    double ref = (k * at(p, x, seed, variant, reference) - at(p, x, seed, variant, reference - 1)) / (k - 1.0);
    std::vector<std::pair<double, double>> out;
    for (int f : levels) out.emplace_back(std::ldexp(1.0, -f), std::abs(at(p, x, seed, variant, f) - ref));
    return out;
}

// Monte Carlo spread: sample standard deviation over independent seeds at
// each level, h = 2^-f (sample size doubles per level).
inline std::vector<std::pair<double, double>> seed_spread(const Program& p, double x, std::uint64_t seed, int variant,
                                                          int levels, int seeds) {
    std::vector<std::pair<double, double>> out;
    for (int f = 0; f < levels; ++f) {
        std::vector<double> v;
        for (int k = 0; k < seeds; ++k)
            v.push_back(at(p, x, derive_seed({seed, static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(k)}),
                           variant, f));
        double m = 0.0;
        for (double y : v) m += y;
        m /= seeds;
        double ss = 0.0;
        for (double y : v) ss += (y - m) * (y - m);
        out.emplace_back(std::ldexp(1.0, -f), std::sqrt(ss / (seeds - 1)));
    }
    return out;
}

inline std::uint64_t other_seed(std::uint64_t seed) { return derive_seed({seed, 0x0de1ULL}); }

}  // namespace semmut::relations
