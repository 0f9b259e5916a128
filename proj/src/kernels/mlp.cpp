#include "semmut/kernels/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semmut/rng.hpp"

namespace semmut::kernels {

double activate(Activation a, double z) {
    switch (a) {
        case Activation::tanh: return std::tanh(z);
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::softsign: return z / (1.0 + std::abs(z));
        case Activation::softplus: return z > 30.0 ? z : std::log1p(std::exp(z));
    }
    return z;
}

namespace {

double derivative(Activation a, double z, double h) {
    switch (a) {
        case Activation::tanh: return 1.0 - h * h;
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return h * (1.0 - h);
        case Activation::softsign: {
            double d = 1.0 + std::abs(z);
            return 1.0 / (d * d);
        }
        case Activation::softplus: return 1.0 / (1.0 + std::exp(-z));
    }
    return 1.0;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void initialise(const MlpConfig& cfg, MlpModel& m, CounterRng& rng) {
    const int h = cfg.hidden;
    m.w1.resize(h);
    m.b1.resize(h);
    m.w2.resize(h);
    for (int j = 0; j < h; ++j) {
        m.w1(j) = cfg.init_scale * rng.normal();
        m.b1(j) = 0.5 * cfg.init_scale * rng.normal();
        m.w2(j) = cfg.init_scale * rng.normal() / std::sqrt(static_cast<double>(h));
    }
    if (cfg.negate_first_layer) m.w1 = -m.w1;
    m.b2 = 0.0;
}

void round_to_float(MlpModel& m) {
    auto r = [](double v) { return static_cast<double>(static_cast<float>(v)); };
    m.w1 = m.w1.unaryExpr(r);
    m.b1 = m.b1.unaryExpr(r);
    m.w2 = m.w2.unaryExpr(r);
    m.b2 = r(m.b2);
}

}  // namespace

double MlpModel::operator()(double t) const {
    double out = b2;
    for (Eigen::Index j = 0; j < w1.size(); ++j) out += w2(j) * activate(activation, w1(j) * t + b1(j));
    return sigmoid_output ? sigmoid(out) : out;
}

double mlp_loss(const MlpConfig& cfg, const MlpModel& m, const std::vector<double>& t, const std::vector<double>& y) {
    double total = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p = m(t[i]);
        double c = y[i] > 0.5 ? cfg.positive_weight : 1.0;
        switch (cfg.loss) {
            case Loss::mse: total += c * (p - y[i]) * (p - y[i]); break;
            case Loss::mae: total += c * std::abs(p - y[i]); break;
            case Loss::bce: {
                double pc = std::clamp(p, 1e-12, 1.0 - 1e-12);
                total -= c * (y[i] * std::log(pc) + (1.0 - y[i]) * std::log(1.0 - pc));
                break;
            }
        }
    }
    return total / static_cast<double>(t.size());
}

MlpModel train_mlp(const MlpConfig& cfg, const std::vector<double>& t_in, const std::vector<double>& y_in,
                   std::uint64_t seed, const std::function<void(int, const MlpModel&)>& on_epoch) {
    std::vector<double> t = t_in, y = y_in;
    if (cfg.skip_last_sample && t.size() > 1) {
        t.pop_back();
        y.pop_back();
    }
    if (cfg.label_smoothing > 0.0)
        for (double& v : y) v = v * (1.0 - cfg.label_smoothing) + 0.5 * cfg.label_smoothing;

    CounterRng rng(derive_seed({seed, 0x31bULL}));
    MlpModel m;
    m.activation = cfg.activation;
    m.sigmoid_output = cfg.sigmoid_output;
    initialise(cfg, m, rng);
    if (cfg.single_precision) round_to_float(m);

    const int h = cfg.hidden;
    const std::size_t n = t.size();
    Eigen::VectorXd vw1 = Eigen::VectorXd::Zero(h), vb1 = vw1, vw2 = vw1;
    double vb2 = 0.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> z(static_cast<std::size_t>(h)), act(static_cast<std::size_t>(h));

    if (on_epoch) on_epoch(0, m);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (epoch == cfg.restart_epoch) initialise(cfg, m, rng);
        std::size_t batch = cfg.batch > 0 ? static_cast<std::size_t>(cfg.batch) : n;
        if (cfg.batch > 0)
            for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t start = 0; start < n; start += batch) {
            std::size_t stop = std::min(n, start + batch);
            Eigen::VectorXd gw1 = Eigen::VectorXd::Zero(h), gb1 = gw1, gw2 = gw1;
            double gb2 = 0.0;
            const double inv = 1.0 / static_cast<double>(stop - start);
            for (std::size_t s = start; s < stop; ++s) {
                std::size_t i = order[s];
                double out = m.b2;
                for (int j = 0; j < h; ++j) {
                    auto ju = static_cast<std::size_t>(j);
                    z[ju] = m.w1(j) * t[i] + m.b1(j);
                    bool masked = cfg.mask_period > 0 && epoch % 2 == 1 && j % cfg.mask_period == 0;
                    act[ju] = masked ? 0.0 : activate(cfg.activation, z[ju]);
                    out += m.w2(j) * act[ju];
                }
                double c = y[i] > 0.5 ? cfg.positive_weight : 1.0;
                double delta;
                double p = cfg.sigmoid_output ? sigmoid(out) : out;
                switch (cfg.loss) {
                    case Loss::mse: delta = 2.0 * c * (p - y[i]); break;
                    case Loss::mae: delta = c * ((p > y[i]) - (p < y[i])); break;
                    case Loss::bce: delta = c * (p - y[i]); break;
                }
                if (cfg.sigmoid_output && cfg.loss != Loss::bce) delta *= p * (1.0 - p);
                if (!cfg.sigmoid_output && cfg.loss == Loss::bce) delta = c * (sigmoid(out) - y[i]);
                delta *= inv;
                gb2 += delta;
                for (int j = 0; j < h; ++j) {
                    auto ju = static_cast<std::size_t>(j);
                    gw2(j) += delta * act[ju];
                    double gz = act[ju] == 0.0 && cfg.mask_period > 0 && epoch % 2 == 1 && j % cfg.mask_period == 0
                                    ? 0.0
                                    : delta * m.w2(j) * derivative(cfg.activation, z[ju], act[ju]);
                    gw1(j) += gz * t[i];
                    gb1(j) += gz;
                }
            }
            gw1 = cfg.grad_scale * cfg.gradient_sign_flip_layer1 * (gw1 + cfg.weight_decay * m.w1);
            gb1 = cfg.grad_scale * cfg.gradient_sign_flip_layer1 * gb1;
            gw2 = cfg.grad_scale * (gw2 + cfg.weight_decay * m.w2);
            gb2 = cfg.drop_output_bias_grad ? 0.0 : cfg.grad_scale * gb2;
            if (cfg.freeze_unit0) gw1(0) = gb1(0) = gw2(0) = 0.0;

            const double lr = cfg.learning_rate, mu = cfg.momentum;
            vw1 = mu * vw1 - lr * gw1;
            vb1 = mu * vb1 - lr * gb1;
            vw2 = mu * vw2 - lr * gw2;
            vb2 = mu * vb2 - lr * gb2;
            m.w1 += vw1;
            m.b1 += vb1;
            m.w2 += vw2;
            m.b2 += vb2;
            if (cfg.single_precision) round_to_float(m);
        }
        if (on_epoch) on_epoch(epoch + 1, m);
    }
    return m;
}

}  // namespace semmut::kernels
