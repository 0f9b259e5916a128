#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "semmut/kernels/class_d.hpp"

namespace semmut::kernels {

namespace {

constexpr int kPoints = 24;

struct Dataset {
    std::vector<double> t, y;
};

Dataset dataset(const LogisticParams& p, int variant) {
    Dataset d;
    for (int i = 0; i < kPoints; ++i) {
        double t = -2.0 + 4.0 * i / (kPoints - 1);
        double y = t > p.label_threshold ? 1.0 : 0.0;
        if (!p.skip_flips && (i == 4 || i == 13 || i == 19)) y = 1.0 - y;
        if (p.reverse_labels) y = 1.0 - y;
        if (variant == kLogisticFlipped) y = 1.0 - y;
        d.t.push_back(t);
        d.y.push_back(y);
    }
    if (p.drop_last_point) {
        d.t.pop_back();
        d.y.pop_back();
    }
    if (variant == kLogisticPermuted) {
        Dataset s;
        const std::size_t n = d.t.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = (5 * i + 7) % n;
            s.t.push_back(d.t[j]);
            s.y.push_back(d.y[j]);
        }
        return s;
    }
    return d;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double link(const LogisticParams& p, double z) {
    if (p.hard_sigmoid) return std::clamp(0.5 + 0.25 * z, 0.0, 1.0);
    if (p.probit_link) return 0.5 * std::erfc(-z / std::sqrt(2.0));
    return sigmoid(z);
}

double feature(const LogisticParams& p, double t) { return p.tanh_feature ? std::tanh(t) : t; }

struct Fit {
    Eigen::Vector2d w = Eigen::Vector2d::Zero();
    double data_loss = 0.0;
};

Fit fit(const LogisticParams& p, const Dataset& d, double lambda, double pos_weight) {
    const auto n = static_cast<double>(d.t.size());
    Eigen::Vector2d w = Eigen::Vector2d::Zero();
    Eigen::Matrix2d stale = Eigen::Matrix2d::Zero();
    for (int it = 0; it < p.iterations; ++it) {
        double lam = (p.late_lambda > 0.0 && it >= 20) ? p.late_lambda : lambda;
        lam *= p.lambda_sign;
        Eigen::Vector2d g = Eigen::Vector2d::Zero();
        Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
        for (std::size_t i = 0; i < d.t.size(); ++i) {
            Eigen::Vector2d phi(1.0, feature(p, d.t[i]));
            double c = d.y[i] > 0.5 ? pos_weight : 1.0;
            double s = link(p, w.dot(phi));
            g += c * (s - d.y[i]) * phi;
            h += c * std::max(s * (1.0 - s), 1e-3) * phi * phi.transpose();
        }
        g /= n;
        h /= n;
        Eigen::Vector2d reg(p.regularise_bias ? 1.0 : 0.0, 1.0);
        g += 2.0 * lam * reg.cwiseProduct(w);
        h += 2.0 * lam * Eigen::Matrix2d(reg.asDiagonal());
        h *= p.hessian_scale;
        if (p.diagonal_hessian) h = Eigen::Matrix2d(h.diagonal().asDiagonal());
        if (p.stale_hessian) {
            if (it == 0) stale = h;
            h = stale;
        }
        Eigen::Vector2d step = p.gradient_descent ? Eigen::Vector2d(g) : Eigen::Vector2d(h.ldlt().solve(g));
        w -= p.damping * step;
        if (p.single_precision) w = w.cast<float>().cast<double>();
    }
    Fit f;
    f.w = w;
    for (std::size_t i = 0; i < d.t.size(); ++i) {
        double s = std::clamp(link(p, w(0) + w(1) * feature(p, d.t[i])), 1e-15, 1.0 - 1e-15);
        f.data_loss -= d.y[i] * std::log(s) + (1.0 - d.y[i]) * std::log(1.0 - s);
    }
    f.data_loss /= n;
    return f;
}

double observe(const LogisticParams& p, const Query& q) {
    Dataset d = dataset(p, q.variant);
    double lambda = p.lambda;
    double weight = 1.0;
    switch (q.variant) {
        case kLogisticWeighted: weight = 2.0; break;
        case kLogisticPath: lambda = std::ldexp(lambda, -q.fidelity); break;
        case kLogisticDataLossStrong:
        case kLogisticNormStrong: lambda *= 4.0; break;
        default: break;
    }
    Fit f = fit(p, d, lambda, weight);
    if (q.variant == kLogisticDataLoss || q.variant == kLogisticDataLossStrong) return f.data_loss;
    if (q.variant == kLogisticNorm || q.variant == kLogisticNormStrong) return std::abs(f.w(1));
    double prob = link(p, f.w(0) + f.w(1) * feature(p, q.x) + p.logit_offset);
    if (p.probability_clip > 0.0) prob = std::clamp(prob, p.probability_clip, 1.0 - p.probability_clip);
    return prob;
}

}  // namespace

Program make_logistic(const LogisticParams& p) {
    return Program(PutId::D3, Interval{-2.0, 2.0}, [p](const Query& q) { return observe(p, q); });
}

}  // namespace semmut::kernels
