#include "semmut/program.hpp"

#include <cmath>

#include "semmut/rng.hpp"

namespace semmut {

Program::Program(PutId put, Interval domain, ScalarFn scalar, TrajectoryFn trajectory)
    : put_(put), domain_(domain), scalar_(std::move(scalar)), trajectory_(std::move(trajectory)) {}

std::vector<double> Program::trajectory(const Query& q, int steps) const {
    if (!trajectory_)
        fail(ErrorKind::NotTrajectoryCapable, std::string(to_string(put_)) + " has no trajectory");
    if (steps < 2) fail(ErrorKind::InvalidArgument, "steps must be >= 2");
    return trajectory_(q, steps);
}

double Program::checked(const Query& q) const {
    if (!std::isfinite(q.x) || !domain_.contains(q.x))
        fail(ErrorKind::DomainViolation, std::string(to_string(put_)) + ": x = " + std::to_string(q.x) +
                                             " outside [" + std::to_string(domain_.lo) + ", " +
                                             std::to_string(domain_.hi) + "]");
    double y = scalar_(q);
    if (!std::isfinite(y)) fail(ErrorKind::NonFiniteOutput, std::string(to_string(put_)));
    return y;
}

SamplePoint stream_point(const Interval& domain, std::uint64_t seed, std::size_t i) {
    CounterRng rng(derive_seed({seed, 0x5eed57ea3ULL, i}));
    double x = domain.at(rng.uniform());
    return SamplePoint{x, rng.next_u64()};
}

std::vector<double> sweep_trajectory(const Program::ScalarFn& f, const Interval& domain,
                                     const Query& q, int steps) {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        Query qk = q;
        qk.x = domain.lo + (q.x - domain.lo) * static_cast<double>(k) / (steps - 1);
        if (k == steps - 1) qk.x = q.x;
        out[static_cast<std::size_t>(k)] = f(qk);
    }
    return out;
}

}  // namespace semmut
