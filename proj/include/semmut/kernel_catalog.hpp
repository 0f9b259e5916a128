#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semmut/program.hpp"
#include "semmut/types.hpp"

namespace semmut {

struct PutDescriptor {
    PutId id = PutId::A1;
    std::string name;
    std::string mathematical_structure;
    Interval input_domain;
    double ood_band_default = 0.05;
    bool trajectory_capable = false;
    bool stochastic = false;
};

// Fixed A1..D3 order.
const std::vector<PutDescriptor>& list_puts();
const PutDescriptor& descriptor(PutId id);

// The unmutated kernel; shared and immutable.
const Program& original_program(PutId id);

double evaluate_put(PutId id, double x, std::uint64_t seed);
std::vector<double> evaluate_trajectory(PutId id, double x, std::uint64_t seed, int steps);

}  // namespace semmut
