#include <cmath>
#include <memory>
#include <tuple>

#include "semmut/kernels/class_d.hpp"
#include "semmut/kernels/memo.hpp"

namespace semmut::kernels {

namespace {

constexpr int kPoints = 16;

struct Dataset {
    std::vector<double> u, y;
};

Dataset dataset(const ClassifierParams& p, int variant) {
    Dataset d;
    for (int i = 0; i < kPoints; ++i) {
        double t = -0.95 + 1.9 * i / (kPoints - 1);
        double y = (p.reflect_labels ? t < p.label_threshold : t > p.label_threshold) ? 1.0 : 0.0;
        if (i == p.flipped_label) y = 1.0 - y;
        d.u.push_back((variant == kClassifierMirror ? -t : t) + p.input_shift);
        d.y.push_back(y);
    }
    if (p.duplicate_positive) {
        d.u.push_back(d.u.back());
        d.y.push_back(d.y.back());
    }
    if (variant == kClassifierPermuted) {
        Dataset s;
        const std::size_t n = d.u.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = (7 * i + 5) % n;
            s.u.push_back(d.u[j]);
            s.y.push_back(d.y[j]);
        }
        return s;
    }
    return d;
}

MlpConfig config(const ClassifierParams& p, const Query& q) {
    MlpConfig cfg = p.mlp;
    cfg.learning_rate = std::ldexp(cfg.learning_rate, -q.fidelity);
    cfg.epochs <<= q.fidelity;
    if (q.variant == kClassifierWeighted) cfg.positive_weight *= 2.0;
    if (q.variant == kClassifierMirror) cfg.negate_first_layer = !cfg.negate_first_layer;
    if (q.variant == kClassifierLossLong) cfg.epochs *= 2;
    if (q.variant == kClassifierLossShort) cfg.epochs /= 2;
    return cfg;
}

struct Trained {
    MlpModel model;
    double loss = 0.0;
};

Trained train(const ClassifierParams& p, const Query& q) {
    Dataset d = dataset(p, q.variant);
    MlpConfig cfg = config(p, q);
    Trained t;
    t.model = train_mlp(cfg, d.u, d.y, q.seed);
    MlpConfig plain = cfg;
    plain.positive_weight = 1.0;
    t.loss = mlp_loss(plain, t.model, d.u, d.y);
    return t;
}

bool is_loss(int variant) {
    return variant == kClassifierLoss || variant == kClassifierLossLong || variant == kClassifierLossShort;
}

using Key = std::tuple<std::uint64_t, int, int>;

double observe(const ClassifierParams& p, Memo<Key, Trained>& memo, const Query& q) {
    int model_variant = q.variant == kClassifierLoss ? kClassifierProb : q.variant;
    Query mq = q;
    mq.variant = model_variant;
    auto t = memo.get(Key{q.seed, q.fidelity, model_variant}, [&] { return train(p, mq); });
    if (is_loss(q.variant)) return t->loss;
    double x = q.variant == kClassifierMirror ? -q.x : q.x;
    return t->model(x + p.input_shift) + p.output_offset;
}

std::vector<double> learning_curve(const ClassifierParams& p, const Query& q, int steps) {
    Query base = q;
    base.variant = kClassifierProb;
    Dataset d = dataset(p, base.variant);
    MlpConfig cfg = config(p, base);
    std::vector<double> by_epoch;
    train_mlp(cfg, d.u, d.y, q.seed,
              [&](int, const MlpModel& m) { by_epoch.push_back(m(q.x + p.input_shift) + p.output_offset); });
    std::vector<double> out;
    const auto last = static_cast<double>(by_epoch.size() - 1);
    for (int k = 0; k < steps; ++k)
        out.push_back(by_epoch[static_cast<std::size_t>(std::lround(k * last / (steps - 1)))]);
    return out;
}

}  // namespace

ClassifierParams default_classifier() {
    ClassifierParams p;
    p.mlp.hidden = 5;
    p.mlp.activation = Activation::tanh;
    p.mlp.sigmoid_output = true;
    p.mlp.loss = Loss::bce;
    p.mlp.learning_rate = 0.5;
    p.mlp.epochs = 300;
    return p;
}

Program make_classifier(const ClassifierParams& p) {
    auto memo = std::make_shared<Memo<Key, Trained>>();
    return Program(
        PutId::D1, Interval{-1.0, 1.0}, [p, memo](const Query& q) { return observe(p, *memo, q); },
        [p](const Query& q, int steps) { return learning_curve(p, q, steps); });
}

}  // namespace semmut::kernels
