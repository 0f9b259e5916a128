#include <cmath>

#include "semmut/kernels/class_b.hpp"
#include "semmut/rng.hpp"

namespace semmut::kernels {

namespace {

struct Estimate {
    double value = 0.0;
    std::vector<double> running;
};

Estimate estimate(const ImportanceParams& p, const Query& q, int checkpoints) {
    const double x = q.x;
    const double lam = p.lambda;
    const double upper = p.upper;
    const double mass = 1.0 - std::exp(-lam * upper);
    double a = 1.0, b = 0.0;  // integrand a*g + b
    if (q.variant == kIsScaled) a = 2.0;
    if (q.variant == kIsShifted) b = 1.0;
    if (q.variant == kIsConstant) a = 0.0, b = 1.0;

    auto expm = [&](double y) {
        if (!p.pade_exp) return std::exp(-y);
        return (1.0 - y / 2.0 + y * y / 12.0) / (1.0 + y / 2.0 + y * y / 12.0);
    };
    auto h = [&](double u) { return a * expm(x * std::pow(u, p.exponent)) + b; };
    auto density = [&](double u) { return p.normaliser_scale * lam * std::exp(-lam * u) / mass; };
    auto draw = [&](double v) {
        double u = p.linear_draw ? v * upper : -std::log1p(-v * mass) / lam;
        return u + p.sample_offset;
    };
    auto cv = [&](double u) { return a * (1.0 - x * u * u) + b; };
    const double cv_integral = a * (upper - x * upper * upper * upper / 3.0) + b * upper;

    const long n = static_cast<long>(p.base_samples) << q.fidelity;
    const long period = p.reuse_samples ? std::max<long>(1, p.base_samples / 2) : n;
    const std::uint64_t key = p.fixed_stream ? 0x5eedULL : derive_seed({q.seed, 0xb3ULL});

    std::vector<long> marks;
    for (int k = 0; k < checkpoints; ++k)
        marks.push_back(1 + std::lround(static_cast<double>(k) * (n - 1) / std::max(1, checkpoints - 1)));
    std::size_t next_mark = 0;

    Estimate e;
    double num = 0.0, den = 0.0;
    const long used = p.drop_last ? n - 1 : n;
    for (long i = 0; i < n; ++i) {
        CounterRng rng(derive_seed({key, static_cast<std::uint64_t>(i % period)}));
        double v = rng.uniform();
        double term = 0.0, weight = 1.0;
        switch (p.estimator) {
            case IsEstimator::importance: {
                double u = draw(v);
                term = h(u) / density(u) + p.weight_offset;
                break;
            }
            case IsEstimator::plain: term = upper * h(upper * v); break;
            case IsEstimator::antithetic: {
                double u1 = draw(v), u2 = draw(1.0 - v);
                term = 0.5 * (h(u1) / density(u1) + h(u2) / density(u2));
                break;
            }
            case IsEstimator::stratified: term = upper * h(upper * (static_cast<double>(i) + v) / static_cast<double>(n)); break;
            case IsEstimator::self_normalised: {
                double u = draw(v);
                weight = 1.0 / density(u);
                term = upper * h(u) * weight;
                break;
            }
            case IsEstimator::control_variate: {
                double u = draw(v);
                term = (h(u) - cv(u)) / density(u) + cv_integral;
                break;
            }
        }
        if (i < used) {
            num += term;
            den += weight;
        }
        while (next_mark < marks.size() && marks[next_mark] == i + 1) {
            e.running.push_back(p.estimator == IsEstimator::self_normalised ? num / den : num / static_cast<double>(i + 1));
            ++next_mark;
        }
    }
    e.value = p.estimator == IsEstimator::self_normalised ? num / den : num / static_cast<double>(n);
    return e;
}

}  // namespace

Program make_importance(const ImportanceParams& p) {
    return Program(
        PutId::B3, Interval{0.5, 5.0}, [p](const Query& q) { return estimate(p, q, 0).value; },
        [p](const Query& q, int steps) {
            Query base = q;
            base.variant = kIsEstimate;
            Estimate e = estimate(p, base, steps);
            e.running.resize(static_cast<std::size_t>(steps), e.value);
            e.running.back() = e.value;
            return e.running;
        });
}

}  // namespace semmut::kernels
