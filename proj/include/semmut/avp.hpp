#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace semmut {

class Program;
struct MrInstance;
struct MrContext;

enum class Verdict { pass, fail };

struct AvpVerdict {
    Verdict verdict = Verdict::pass;
    std::optional<double> statistic;
    std::optional<double> p_value;
    std::string detail;

    bool passed() const { return verdict == Verdict::pass; }
};

AvpVerdict check_tolerance_equality(double lhs, double rhs, double eps);

enum class Alternative { greater, less, two_sided };

struct SignedRankResult {
    int n = 0;  // nonzero differences
    double w_plus = 0.0;
    double w_minus = 0.0;
    double p_value = 1.0;
    bool exact = true;
};

// Zero differences are discarded, ties get midranks. Exact null
// distribution for n <= 25, normal approximation with continuity
// correction above.
SignedRankResult signed_rank_test(std::span<const double> diffs, Alternative alt);

// MR verdict: "greater" tests for a systematic positive violation.
// All-zero input passes with p = 1 and says so in detail.
AvpVerdict wilcoxon_signed_rank(std::span<const double> diffs, double alpha,
                                Alternative alt = Alternative::greater);

struct ConvergenceEstimate {
    double observed_order = 0.0;
    double residual_ratio = 0.0;
};

// errors: (h, e) with h strictly decreasing by a constant factor.
ConvergenceEstimate convergence_order(std::span<const std::pair<double, double>> errors);

// Unconstrained DTW with |a_i - b_j| local cost.
double dtw_distance(std::span<const double> a, std::span<const double> b);

// Dispatches on mr.mp. Any exception or non-finite value from the program
// is a fail with detail "non-finite".
AvpVerdict avp_verify(const Program& program, const MrInstance& mr, const MrContext& ctx);
AvpVerdict avp_verify(const Program& program, const MrInstance& mr, std::uint64_t seed);

}  // namespace semmut
