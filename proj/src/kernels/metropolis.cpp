#include <algorithm>
#include <cmath>

#include "semmut/kernels/class_b.hpp"
#include "semmut/rng.hpp"

namespace semmut::kernels {

namespace {

struct Chain {
    double mean = 0.0;
    double second = 0.0;
    double reject_rate = 0.0;
    std::vector<double> running;
};

double log_target(const MetropolisParams& p, double theta, double mu) {
    double d = theta - mu;
    switch (p.target) {
        case TargetDensity::laplace: return -p.precision_scale * std::abs(d);
        case TargetDensity::squared_ratio: return -p.precision_scale * d * d;
        case TargetDensity::gaussian: break;
    }
    return -0.5 * p.precision_scale * d * d;
}

Chain run_chain(const MetropolisParams& p, const Query& q, int checkpoints) {
    const double mu = p.target_scale * q.x + p.target_shift;
    const bool reject_variant = q.variant == kChainRejectCoarse || q.variant == kChainRejectFine;
    const double step = q.variant == kChainRejectCoarse ? 0.02 : q.variant == kChainRejectFine ? 0.01 : p.step;
    const long length = reject_variant ? 5000 : (static_cast<long>(p.base_length) << q.fidelity);
    const long burn = reject_variant ? 0 : p.burn_in;
    const double start = reject_variant ? mu : mu + p.start_offset;

    CounterRng rng(p.fixed_stream ? 0x5eedULL : derive_seed({q.seed, 0xb2ULL, static_cast<std::uint64_t>(q.variant)}));

    double theta = start;
    double sum = 0.0, sum2 = 0.0, ema = 0.0;
    long kept = 0, rejects = 0;
    bool first_acceptance = true;
    Chain c;
    std::vector<long> marks;
    for (int k = 0; k < checkpoints; ++k)
        marks.push_back(1 + std::lround(static_cast<double>(k) * (length - 1) / std::max(1, checkpoints - 1)));
    std::size_t next_mark = 0;

    const long total = burn + length;
    for (long i = 0; i < total; ++i) {
        if (p.restart_every > 0 && i > 0 && i % p.restart_every == 0) theta = start;
        double z = rng.normal();
        double u = rng.uniform();
        double prop = theta;
        double log_q = 0.0;  // log q(theta | prop) - log q(prop | theta)
        switch (p.proposal) {
            case Proposal::gaussian: prop = theta + step * z + p.proposal_drift; break;
            case Proposal::uniform: prop = theta + step * (2.0 * rng.uniform() - 1.0) + p.proposal_drift; break;
            case Proposal::independence:
                prop = mu + 2.0 * z;
                log_q = (-(theta - mu) * (theta - mu) + (prop - mu) * (prop - mu)) / 8.0;
                break;
            case Proposal::langevin: {
                double h = step;
                auto drift = [&](double t) { return t - 0.5 * h * h * (t - mu); };
                prop = drift(theta) + h * z;
                double fwd = prop - drift(theta), bwd = theta - drift(prop);
                log_q = (-bwd * bwd + fwd * fwd) / (2.0 * h * h);
                break;
            }
            case Proposal::exact_draws: prop = mu + z; break;
        }
        double log_r = log_target(p, prop, mu) - log_target(p, theta, mu) + log_q;
        double r = std::min(p.acceptance_cap, std::exp(std::min(log_r, 0.0)));
        bool accept = p.inverted_acceptance ? u >= r : u < r;
        if (p.proposal == Proposal::exact_draws || p.always_move) accept = true;
        if (accept && p.skip_first_acceptance && first_acceptance) {
            first_acceptance = false;
            accept = false;
        }
        if (accept) theta = prop;
        else ++rejects;

        if (i >= burn || p.include_burn_in) {
            ++kept;
            sum += theta;
            sum2 += (theta - mu) * (theta - mu);
            ema = kept == 1 ? theta : (1.0 - p.forgetting) * ema + p.forgetting * theta;
            while (next_mark < marks.size() && marks[next_mark] == kept - (p.include_burn_in ? burn : 0)) {
                c.running.push_back(p.forgetting > 0.0 ? ema : sum / static_cast<double>(kept));
                ++next_mark;
            }
        }
    }
    double denom = static_cast<double>(kept) + (p.divide_by_n_plus_one ? 1.0 : 0.0);
    c.mean = p.forgetting > 0.0 ? ema : sum / denom;
    c.second = sum2 / denom;
    c.reject_rate = static_cast<double>(rejects) / static_cast<double>(total);
    return c;
}

double observe(const MetropolisParams& p, const Query& q) {
    Chain c = run_chain(p, q, 0);
    switch (q.variant) {
        case kChainRejectCoarse:
        case kChainRejectFine: return c.reject_rate;
        case kChainSecondMoment: return c.second;
        default: return c.mean;
    }
}

}  // namespace

Program make_metropolis(const MetropolisParams& p) {
    return Program(
        PutId::B2, Interval{-2.0, 2.0}, [p](const Query& q) { return observe(p, q); },
        [p](const Query& q, int steps) {
            Query base = q;
            base.variant = kChainMean;
            Chain c = run_chain(p, base, steps);
            c.running.resize(static_cast<std::size_t>(steps), c.mean);
            c.running.back() = c.mean;
            return c.running;
        });
}

}  // namespace semmut::kernels
