#include <cmath>
#include <numeric>

#include "semmut/kernels/class_d.hpp"

namespace semmut::kernels {

namespace {

constexpr int kPoints = 20;

struct Dataset {
    std::vector<double> t, y;
};

Dataset dataset(const SvmParams& p, bool permuted) {
    Dataset d;
    for (int i = 0; i < kPoints; ++i) {
        double t = -1.0 + 2.0 * i / (kPoints - 1);
        double y = t > p.label_threshold ? 1.0 : -1.0;
        if (!p.skip_flips && (i == 3 || i == 16)) y = -y;
        if (p.flip_near_boundary && std::abs(t - p.label_threshold) < 0.15) y = -y;
        if (p.reverse_labels) y = -y;
        d.t.push_back(t * p.feature_scale);
        d.y.push_back(y);
    }
    if (permuted) {
        Dataset s;
        for (int i = 0; i < kPoints; ++i) {
            auto j = static_cast<std::size_t>((7 * i + 3) % kPoints);
            s.t.push_back(d.t[j]);
            s.y.push_back(d.y[j]);
        }
        return s;
    }
    return d;
}

struct Fit {
    double w = 0.0, b = 0.0;
    double objective = 0.0;
};

double objective(const SvmParams& p, const Dataset& d, double lambda, double pos_weight, double w, double b) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.t.size(); ++i) {
        double c = d.y[i] > 0.0 ? pos_weight : 1.0;
        double slack = std::max(0.0, p.margin - d.y[i] * (w * d.t[i] + b));
        total += c * std::pow(slack, p.hinge_power);
    }
    double reg = w * w + (p.regularise_bias ? b * b : 0.0);
    return total / static_cast<double>(d.t.size()) + lambda * reg;
}

Fit fit(const SvmParams& p, const Dataset& d, double lambda, double lr, int iterations, double pos_weight) {
    if (p.early_stop > 0) iterations = std::min(iterations, p.early_stop);
    const auto n = static_cast<double>(d.t.size());
    double w = 0.0, b = 0.0, sw = 0.0, sb = 0.0;
    for (int it = 0; it < iterations; ++it) {
        double gw = 0.0, gb = 0.0;
        for (std::size_t i = 0; i < d.t.size(); ++i) {
            double c = d.y[i] > 0.0 ? pos_weight : 1.0;
            double slack = p.margin - d.y[i] * (w * d.t[i] + b);
            if (slack <= 0.0) continue;
            double g = c * p.hinge_power * std::pow(slack, p.hinge_power - 1.0) * d.y[i];
            gw -= g * d.t[i];
            gb -= g;
        }
        gw = gw / n + 2.0 * lambda * w;
        gb = gb / n + (p.regularise_bias ? 2.0 * lambda * b : 0.0);
        if (p.sign_gradient) {
            gw = (gw > 0.0) - (gw < 0.0);
            gb = (gb > 0.0) - (gb < 0.0);
        }
        double step = lr / (1.0 + p.lr_decay * it);
        w -= step * gw;
        if (!p.freeze_bias) b -= step * p.bias_learning_scale * gb;
        if (p.single_precision) {
            w = static_cast<float>(w);
            b = static_cast<float>(b);
        }
        sw += w;
        sb += b;
    }
    Fit f;
    if (p.averaged_iterate && iterations > 0) {
        f.w = sw / iterations;
        f.b = sb / iterations;
    } else {
        f.w = w;
        f.b = b;
    }
    f.objective = objective(p, d, lambda, pos_weight, f.w, f.b);
    return f;
}

double observe(const SvmParams& p, const Query& q) {
    const double lr = std::ldexp(p.learning_rate, -q.fidelity);
    const int scale = 1 << q.fidelity;
    Dataset d = dataset(p, q.variant == kSvmPermuted);
    auto decision = [&](const Fit& f) { return f.w * q.x * p.feature_scale + f.b + p.decision_offset; };
    switch (q.variant) {
        case kSvmObjectiveShort: return fit(p, d, p.lambda, lr, 20 * scale, 1.0).objective;
        case kSvmObjectiveLong: return fit(p, d, p.lambda, lr, 40 * scale, 1.0).objective;
        case kSvmNorm: return std::abs(fit(p, d, p.lambda, lr, p.iterations * scale, 1.0).w);
        case kSvmNormStrong: return std::abs(fit(p, d, 4.0 * p.lambda, lr, p.iterations * scale, 1.0).w);
        case kSvmWeighted: return decision(fit(p, d, p.lambda, lr, p.iterations * scale, 2.0));
        case kSvmShortFlow: return decision(fit(p, d, p.lambda, lr, 20 * scale, 1.0));
        default: return decision(fit(p, d, p.lambda, lr, p.iterations * scale, 1.0));
    }
}

}  // namespace

Program make_svm(const SvmParams& p) {
    return Program(PutId::D2, Interval{-1.0, 1.0}, [p](const Query& q) { return observe(p, q); });
}

}  // namespace semmut::kernels
