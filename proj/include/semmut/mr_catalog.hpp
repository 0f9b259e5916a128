#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semmut/program.hpp"
#include "semmut/types.hpp"

namespace semmut {

enum class CellDensity { substantial, moderate, vacant };

std::string_view to_string(CellDensity d);
CellDensity density(PutId put, MetaPattern mp);
MetaPattern primary_mp(PutId put);

// sample_seed fixes the MR's input sample, kernel_seed feeds stochastic
// kernels; region (if set) restricts the sample to a sub-interval.
struct MrContext {
    std::uint64_t sample_seed = 0;
    std::uint64_t kernel_seed = 0;
    std::optional<Interval> region;
};

struct EqualityObservation {
    std::vector<double> lhs, rhs;
};

// Positive entries are violations of the expected ordering.
struct OrderingObservation {
    std::vector<double> violations;
};

struct ConvergenceObservation {
    std::vector<std::pair<double, double>> errors;
};

struct TrajectoryObservation {
    std::vector<double> a, b;
};

using Observation =
    std::variant<EqualityObservation, OrderingObservation, ConvergenceObservation, TrajectoryObservation>;

enum class VerificationMethod { tolerance_equality, wilcoxon, convergence_order, dtw, exact_equality };

std::string_view to_string(VerificationMethod m);

// Maps a source input to its follow-up input (identity when the follow-up
// differs only in the observed variant or fidelity).
using Transform = std::function<double(double)>;

struct MrInstance {
    std::string id;
    PutId put = PutId::A1;
    MetaPattern mp = MetaPattern::MP1;
    std::string description;  // input transform and relation, in words
    Interval region;          // source-input region
    Transform transform;
    // MP1: absolute eps; MP2/MP5: alpha; MP3: order tolerance; MP4: DTW eps.
    double tolerance = 0.0;
    double expected_order = 0.0;
    bool exact = false;
    std::function<Observation(const Program&, const MrContext&)> observe;

    VerificationMethod method() const;
};

inline constexpr int kOrderingPairs = 30;

// Builders shared by the per-class relation files. Each draws its source
// inputs from region (intersected with ctx.region) using ctx.sample_seed;
// the callbacks receive the source x, its follow-up t(x) and a kernel seed,
// which is per point unless shared_seed is set (one seed per context, so
// trained kernels are fitted once and probed at many inputs).
using PairFn = std::function<std::pair<double, double>(const Program&, double, double, std::uint64_t)>;
using ViolationFn = std::function<double(const Program&, double, double, std::uint64_t)>;
using ErrorSeriesFn =
    std::function<std::vector<std::pair<double, double>>(const Program&, double, double, std::uint64_t)>;
using TrajectoryPairFn = std::function<std::pair<std::vector<double>, std::vector<double>>(
    const Program&, double, double, std::uint64_t)>;

MrInstance equality_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                       int points, PairFn fn, double eps = 1e-6, bool shared_seed = false);
MrInstance ordering_mr(std::string id, PutId put, MetaPattern mp, std::string description, Interval region,
                       Transform t, ViolationFn fn, double alpha = 0.05, bool shared_seed = false);
// The per-level errors are summed over `points` source inputs.
MrInstance convergence_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                          int points, double expected_order, double order_tolerance, ErrorSeriesFn fn,
                          bool shared_seed = false);
// tolerance is calibrated on the original program when the catalogue is built.
MrInstance trajectory_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                         TrajectoryPairFn fn);

Transform identity_transform();
Transform shift_transform(double delta);

// Source inputs for an MR, reproducible from (ctx, mr id).
std::vector<double> mr_inputs(const std::string& id, const Interval& region, const MrContext& ctx, int n);

// MR sets for each (PUT, pattern); empty iff the cell is vacant. Built once,
// immutable afterwards.
const std::vector<MrInstance>& mrs_for(PutId put, MetaPattern mp);

// Equality pattern for the degenerate limit: r = identity, relation is
// bitwise equality of mutant and reference outputs on the shared E2 stream.
MrInstance equality_pattern_mr(const Program& reference, std::size_t k_eq);

// Per-class relation tables, defined in src/relations/.
std::vector<MrInstance> class_a_relations(PutId put, MetaPattern mp);
std::vector<MrInstance> class_b_relations(PutId put, MetaPattern mp);
std::vector<MrInstance> class_c_relations(PutId put, MetaPattern mp);
std::vector<MrInstance> class_d_relations(PutId put, MetaPattern mp);

}  // namespace semmut
