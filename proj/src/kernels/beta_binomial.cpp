#include <algorithm>
#include <cmath>

#include "semmut/kernels/class_b.hpp"
#include "semmut/rng.hpp"

namespace semmut::kernels {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

namespace {

double digamma(double x) {
    double r = 0.0;
    while (x < 6.0) {
        r -= 1.0 / x;
        x += 1.0;
    }
    double f = 1.0 / (x * x);
    return r + std::log(x) - 0.5 / x - f * (1.0 / 12.0 - f * (1.0 / 120.0 - f * (1.0 / 252.0 - f / 240.0)));
}

double posterior_statistic(const BetaBinomialParams& p, double a, double b, double k, double n) {
    switch (p.estimator) {
        case PosteriorEstimator::mean: {
            b *= 1.0 + p.normaliser_drift;
            if (p.unnormalised) return std::exp(log_beta(a + 1.0, b));
            return std::exp(log_beta(a + 1.0, b) - log_beta(a, b));
        }
        case PosteriorEstimator::mode: return (a - 1.0) / (a + b - 2.0);
        case PosteriorEstimator::median_approx: return (a - 1.0 / 3.0) / (a + b - 2.0 / 3.0);
        case PosteriorEstimator::mle: return k / n;
        case PosteriorEstimator::odds: return a / b;
        case PosteriorEstimator::float_mean: {
            auto fa = static_cast<float>(a), fb = static_cast<float>(b);
            float lb1 = std::lgamma(fa + 1.0f) + std::lgamma(fb) - std::lgamma(fa + 1.0f + fb);
            float lb0 = std::lgamma(fa) + std::lgamma(fb) - std::lgamma(fa + fb);
            return static_cast<double>(std::exp(lb1 - lb0));
        }
        case PosteriorEstimator::monte_carlo: {
            CounterRng rng(0xb1b1b1ULL);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < 256; ++i) {
                double t = rng.uniform();
                double w = std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
                num += w * t;
                den += w;
            }
            return num / den;
        }
        case PosteriorEstimator::quadrature: {
            double num = 0.0, den = 0.0;
            for (int i = 0; i < 6; ++i) {
                double t = (i + 0.5) / 6.0;
                double w = std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
                num += w * t;
                den += w;
            }
            return num / den;
        }
        case PosteriorEstimator::geometric: return std::exp(digamma(a) - digamma(a + b));
    }
    return 0.0;
}

double evaluate(const BetaBinomialParams& p, const Query& q) {
    double x = p.reflect_alpha ? 10.5 - q.x : q.x;
    if (p.alpha_cap > 0.0) x = std::min(x, p.alpha_cap);
    double alpha = (p.reciprocal_alpha ? 1.0 / x : x) * p.prior_scale + p.alpha_offset;
    double beta = p.beta * p.prior_scale;
    if (p.ignore_prior_above_5 && q.x > 5.0) alpha = beta = 1.0;
    if (p.swap_prior) std::swap(alpha, beta);

    double n = p.trials + p.extra_trials;
    double k = p.successes;
    if (p.failures_as_successes) k = p.trials - p.successes;
    if (p.success_cap >= 0) k = std::min<double>(k, p.success_cap);
    k += p.success_pseudo;
    if (p.double_count) {
        k *= 2.0;
        n *= 2.0;
    }
    const double w = p.data_weight;

    switch (q.variant) {
        case kBetaSequential: {
            double a1 = alpha + w * (0.5 * k), b1 = beta + w * (0.5 * (n - k));
            return posterior_statistic(p, a1 + w * (0.5 * k), b1 + w * (0.5 * (n - k)), k, n);
        }
        case kBetaSwapped: return posterior_statistic(p, beta + w * (n - k), alpha + w * k, n - k, n);
        case kBetaPriorMean: return alpha / (alpha + beta);
        case kBetaMle: return k / n;
        default: return posterior_statistic(p, alpha + w * k, beta + w * (n - k), k, n);
    }
}

}  // namespace

Program make_beta_binomial(const BetaBinomialParams& p) {
    return Program(PutId::B1, Interval{0.5, 10.0}, [p](const Query& q) { return evaluate(p, q); });
}

}  // namespace semmut::kernels
