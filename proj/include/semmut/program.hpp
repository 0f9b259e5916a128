#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "semmut/types.hpp"

namespace semmut {

// A callable view of one kernel configuration (the original or a mutant).
// Copies share the underlying closures, so copying is cheap.
class Program {
public:
    using ScalarFn = std::function<double(const Query&)>;
    using TrajectoryFn = std::function<std::vector<double>(const Query&, int)>;

    Program() = default;
    Program(PutId put, Interval domain, ScalarFn scalar, TrajectoryFn trajectory = {});

    PutId put() const { return put_; }
    const Interval& domain() const { return domain_; }
    bool has_trajectory() const { return static_cast<bool>(trajectory_); }

    // Unchecked evaluation; may return non-finite values or throw.
    double operator()(const Query& q) const { return scalar_(q); }
    double operator()(double x, std::uint64_t seed = 0, int fidelity = 0, int variant = 0) const {
        return scalar_(Query{x, seed, fidelity, variant});
    }

    std::vector<double> trajectory(const Query& q, int steps) const;

    // Domain and finiteness checked evaluation.
    double checked(const Query& q) const;

private:
    PutId put_ = PutId::A1;
    Interval domain_{};
    ScalarFn scalar_;
    TrajectoryFn trajectory_;
};

struct SamplePoint {
    double x;
    std::uint64_t seed;
};

// Point i of the uniform input stream over domain keyed by seed; shared by
// E2 sampling and the equality pattern so both see identical inputs.
SamplePoint stream_point(const Interval& domain, std::uint64_t seed, std::size_t i);

// Trajectory of f(lo + (x - lo) k / (steps - 1)), k = 0..steps-1; used by
// kernels without a natural time axis.
std::vector<double> sweep_trajectory(const Program::ScalarFn& f, const Interval& domain,
                                     const Query& q, int steps);

}  // namespace semmut
