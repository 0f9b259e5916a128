#pragma once

#include <vector>

#include "semmut/kernels/mlp.hpp"
#include "semmut/program.hpp"

namespace semmut::kernels {

// D1: 1-5-1 tanh/sigmoid classifier trained with BCE on 16 points of
// [-0.95, 0.95], label t > 0.1; x = query point, output P(y = 1 | x).
struct ClassifierParams {
    MlpConfig mlp{};
    double label_threshold = 0.1;
    int flipped_label = -1;
    double input_shift = 0.0;
    double output_offset = 0.0;
    bool duplicate_positive = false;
    bool reflect_labels = false;  // label t < threshold
};

inline constexpr int kClassifierProb = 0;
inline constexpr int kClassifierPermuted = 1;
inline constexpr int kClassifierMirror = 2;    // trained on reflected inputs, evaluated at -x
inline constexpr int kClassifierWeighted = 3;  // positive class weight 2
inline constexpr int kClassifierLoss = 4;
inline constexpr int kClassifierLossLong = 5;
inline constexpr int kClassifierLossShort = 6;

ClassifierParams default_classifier();
Program make_classifier(const ClassifierParams& p);

// D2: linear L2-SVM with squared hinge loss trained by gradient descent on
// 20 points of [-1, 1], label sign(t - 0.2) with two flipped labels;
// output is the decision value at x.
struct SvmParams {
    double lambda = 0.01;
    double learning_rate = 0.1;
    int iterations = 500;
    double label_threshold = 0.2;
    double margin = 1.0;
    double hinge_power = 2.0;
    double feature_scale = 1.0;
    double decision_offset = 0.0;
    double bias_learning_scale = 1.0;
    double lr_decay = 0.0;              // lr / (1 + decay * iteration)
    bool regularise_bias = false;
    bool freeze_bias = false;
    bool averaged_iterate = false;
    bool flip_near_boundary = false;    // labels with |t - threshold| < 0.15 flipped
    bool single_precision = false;
    bool skip_flips = false;
    int early_stop = 0;                 // > 0 stops after this many iterations
    bool sign_gradient = false;
    bool reverse_labels = false;
};

inline constexpr int kSvmDecision = 0;
inline constexpr int kSvmPermuted = 1;
inline constexpr int kSvmObjectiveShort = 2;   // after 20 * 2^f iterations
inline constexpr int kSvmObjectiveLong = 3;    // after 40 * 2^f iterations
inline constexpr int kSvmNorm = 4;
inline constexpr int kSvmNormStrong = 5;       // lambda * 4
inline constexpr int kSvmWeighted = 6;         // positive class weight 2
inline constexpr int kSvmShortFlow = 7;        // decision after 20 * 2^f iterations

Program make_svm(const SvmParams& p = {});

// D3: L2-regularised logistic regression fitted by Newton's method on 24
// points of [-2, 2], label t > 0.3 with three flipped labels; output p(x).
struct LogisticParams {
    double lambda = 0.05;
    int iterations = 25;
    double label_threshold = 0.3;
    double damping = 1.0;                // Newton step fraction
    bool regularise_bias = false;
    bool diagonal_hessian = false;
    bool gradient_descent = false;       // fixed-step GD instead of Newton
    double late_lambda = 0.0;            // > 0 replaces lambda from iteration 20 on
    double probability_clip = 0.0;       // > 0 clips p(x) into [clip, 1 - clip]
    double logit_offset = 0.0;
    double hessian_scale = 1.0;
    bool drop_last_point = false;
    bool single_precision = false;
    bool skip_flips = false;
    double lambda_sign = 1.0;
    bool stale_hessian = false;          // Hessian from the initial iterate only
    bool reverse_labels = false;
    bool probit_link = false;
    bool tanh_feature = false;           // features (1, tanh t)
    bool hard_sigmoid = false;           // clamp(0.5 + z/4, 0, 1)
};

inline constexpr int kLogisticProb = 0;
inline constexpr int kLogisticPermuted = 1;
inline constexpr int kLogisticFlipped = 2;    // labels 1 - y
inline constexpr int kLogisticWeighted = 3;   // positive class weight 2
inline constexpr int kLogisticPath = 4;       // lambda * 2^-f
inline constexpr int kLogisticDataLoss = 5;
inline constexpr int kLogisticDataLossStrong = 6;
inline constexpr int kLogisticNorm = 7;
inline constexpr int kLogisticNormStrong = 8;

Program make_logistic(const LogisticParams& p = {});

}  // namespace semmut::kernels
