#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <tuple>

#include "semmut/kernels/class_c.hpp"
#include "semmut/kernels/memo.hpp"

namespace semmut::kernels {

namespace {

constexpr int kTrainingPoints = 12;

struct Trained {
    MlpModel model;
    Eigen::Vector4d cubic = Eigen::Vector4d::Zero();
    double loss = 0.0;
};

struct Dataset {
    std::vector<double> u, y;
};

double encode(const SurrogateParams& p, double t) { return p.normalise_input ? t / p.input_scale : t; }

Dataset dataset(const SurrogateParams& p, bool permuted, double amplitude) {
    Dataset d;
    for (int i = 0; i < kTrainingPoints; ++i) {
        double t = 0.15 + 2.7 * i / (kTrainingPoints - 1);
        d.u.push_back(encode(p, t));
        double e = std::exp(-t * (1.0 - p.phase_shift));
        d.y.push_back(amplitude * (p.reflect_targets ? e : 1.0 - e) + p.target_offset);
    }
    if (permuted) {
        Dataset s;
        for (int i = 0; i < kTrainingPoints; ++i) {
            auto j = static_cast<std::size_t>((5 * i + 3) % kTrainingPoints);
            s.u.push_back(d.u[j]);
            s.y.push_back(d.y[j]);
        }
        return s;
    }
    return d;
}

Trained train(const SurrogateParams& p, const Query& q) {
    const bool permuted = q.variant == kSurrogatePermuted;
    const double amplitude = q.variant == kSurrogateAmplified ? 1.5 : 1.0;
    Dataset d = dataset(p, permuted, amplitude);
    Trained out;
    if (p.polynomial) {
        Eigen::MatrixXd v(kTrainingPoints, 4);
        Eigen::VectorXd y(kTrainingPoints);
        for (int i = 0; i < kTrainingPoints; ++i) {
            double u = d.u[static_cast<std::size_t>(i)];
            v.row(i) << 1.0, u, u * u, u * u * u;
            y(i) = d.y[static_cast<std::size_t>(i)];
        }
        out.cubic = v.colPivHouseholderQr().solve(y);
        out.loss = (v * out.cubic - y).squaredNorm() / kTrainingPoints;
        return out;
    }
    MlpConfig cfg = p.mlp;
    const int refine = p.truncate_refinement ? std::min(q.fidelity, 1) : q.fidelity;
    cfg.learning_rate = std::ldexp(cfg.learning_rate, -q.fidelity);
    cfg.epochs <<= refine;
    if (q.variant == kSurrogateLossLong) cfg.epochs *= 2;
    if (q.variant == kSurrogateLossShort) cfg.epochs /= 2;
    out.model = train_mlp(cfg, d.u, d.y, q.seed);
    out.loss = mlp_loss(cfg, out.model, d.u, d.y);
    return out;
}

using Key = std::tuple<std::uint64_t, int, int>;

double observe(const SurrogateParams& p, Memo<Key, Trained>& memo, const Query& q) {
    int model_variant = q.variant == kSurrogateLoss ? kSurrogatePrediction : q.variant;
    Query mq = q;
    mq.variant = model_variant;
    auto trained = memo.get(Key{q.seed, q.fidelity, model_variant}, [&] { return train(p, mq); });
    if (q.variant == kSurrogateLoss || q.variant == kSurrogateLossLong || q.variant == kSurrogateLossShort)
        return trained->loss;
    double u = encode(p, q.x);
    double y = p.polynomial ? trained->cubic(0) + u * (trained->cubic(1) + u * (trained->cubic(2) + u * trained->cubic(3)))
                            : trained->model(u);
    return y + p.output_offset;
}

}  // namespace

SurrogateParams default_surrogate() {
    SurrogateParams p;
    p.mlp.hidden = 6;
    p.mlp.activation = Activation::tanh;
    p.mlp.loss = Loss::mse;
    p.mlp.learning_rate = 0.2;
    p.mlp.epochs = 300;
    return p;
}

Program make_surrogate(const SurrogateParams& p) {
    auto memo = std::make_shared<Memo<Key, Trained>>();
    Interval domain{0.0, 3.0};
    auto f = [p, memo](const Query& q) { return observe(p, *memo, q); };
    return Program(PutId::C3, domain, f,
                   [f, domain](const Query& q, int steps) { return sweep_trajectory(f, domain, q, steps); });
}

}  // namespace semmut::kernels
