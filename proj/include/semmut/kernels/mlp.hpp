#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace semmut::kernels {

enum class Activation { tanh, relu, sigmoid, softsign, softplus };
enum class Loss { mse, mae, bce };

// One-hidden-layer network trained by full-batch gradient descent.
struct MlpConfig {
    int hidden = 6;
    Activation activation = Activation::tanh;
    bool sigmoid_output = false;
    Loss loss = Loss::mse;
    double learning_rate = 0.1;
    int epochs = 300;
    double momentum = 0.0;
    double init_scale = 1.0;
    double weight_decay = 0.0;
    double grad_scale = 1.0;
    bool drop_output_bias_grad = false;
    bool freeze_unit0 = false;
    int restart_epoch = -1;  // reinitialise weights once at this epoch
    bool single_precision = false;
    int batch = 0;           // > 0: seeded mini-batches of this size
    int mask_period = 0;     // > 0: on odd epochs every mask_period-th hidden unit is masked
    bool skip_last_sample = false;
    bool negate_first_layer = false;
    double positive_weight = 1.0;  // class weight on y = 1 (bce) or y > 0.5
    double label_smoothing = 0.0;
    double gradient_sign_flip_layer1 = 1.0;
};

struct MlpModel {
    Eigen::VectorXd w1, b1, w2;
    double b2 = 0.0;
    Activation activation = Activation::tanh;
    bool sigmoid_output = false;

    double operator()(double t) const;
};

double activate(Activation a, double z);

MlpModel train_mlp(const MlpConfig& cfg, const std::vector<double>& t, const std::vector<double>& y, std::uint64_t seed,
                   const std::function<void(int, const MlpModel&)>& on_epoch = {});

double mlp_loss(const MlpConfig& cfg, const MlpModel& m, const std::vector<double>& t, const std::vector<double>& y);

}  // namespace semmut::kernels
