#include "draft.hpp"
#include "semmut/kernels/class_d.hpp"

namespace semmut::mutants {

using namespace kernels;
using enum OperatorClass;

namespace {

std::vector<MutantRecord> classifier() {
    using D = Draft<ClassifierParams>;
    std::vector<D> d{
        {CE, "probability + 1e-3", [](auto& p) { p.output_offset = 1e-3; }},
        {CE, "inputs shifted by 0.01", [](auto& p) { p.input_shift = 0.01; }},
        {CE, "label flip on training point 3", [](auto& p) { p.flipped_label = 3; }},
        {CE, "label smoothing 0.05", [](auto& p) { p.mlp.label_smoothing = 0.05; }},
        {CE, "positive samples duplicated", [](auto& p) { p.duplicate_positive = true; }},
        {CE, "over-injected: offset, shift, flip and smoothing",
         [](auto& p) {
             p.output_offset = 1e-3;
             p.input_shift = 0.01;
             p.flipped_label = 5;
             p.mlp.label_smoothing = 0.05;
         },
         4, true},
        {OS, "labels t < 0.1 instead of t > 0.1", [](auto& p) { p.reflect_labels = true; }},
        {OS, "first-layer gradient sign flipped", [](auto& p) { p.mlp.gradient_sign_flip_layer1 = -1.0; }},
        {OS, "label threshold 0.1 -> 0.5", [](auto& p) { p.label_threshold = 0.5; }},
        {OS, "positive class weight 0.2", [](auto& p) { p.mlp.positive_weight = 0.2; }},
        {OS, "label threshold 0.1 -> -0.5", [](auto& p) { p.label_threshold = -0.5; }},
        {OS, "over-injected: reflected labels, threshold, weight and init",
         [](auto& p) {
             p.reflect_labels = true;
             p.label_threshold = 0.3;
             p.mlp.positive_weight = 0.5;
             p.mlp.init_scale = 0.7;
         },
         4, true},
        {HP, "learning rate 0.5 -> 0.25", [](auto& p) { p.mlp.learning_rate = 0.25; }},
        {HP, "learning rate 0.5 -> 1", [](auto& p) { p.mlp.learning_rate = 1.0; }},
        {HP, "epochs 300 -> 150", [](auto& p) { p.mlp.epochs = 150; }},
        {HP, "hidden units 5 -> 3", [](auto& p) { p.mlp.hidden = 3; }},
        {HP, "initial weight scale 1 -> 0.5", [](auto& p) { p.mlp.init_scale = 0.5; }},
        {HP, "over-injected: rate, epochs, width and init",
         [](auto& p) {
             p.mlp.learning_rate = 0.8;
             p.mlp.epochs = 200;
             p.mlp.hidden = 4;
             p.mlp.init_scale = 0.6;
         },
         4, true},
        {TF, "tanh -> ReLU activation", [](auto& p) { p.mlp.activation = Activation::relu; }},
        {TF, "tanh -> softsign activation", [](auto& p) { p.mlp.activation = Activation::softsign; }},
        {TF, "cross-entropy -> squared loss", [](auto& p) { p.mlp.loss = Loss::mse; }},
        {TF, "full batch -> seeded mini-batches of 4", [](auto& p) { p.mlp.batch = 4; }},
        {TF, "momentum 0.9", [](auto& p) { p.mlp.momentum = 0.9; }},
        {TF, "over-injected: ReLU, squared loss, mini-batches, momentum",
         [](auto& p) {
             p.mlp.activation = Activation::relu;
             p.mlp.loss = Loss::mse;
             p.mlp.batch = 8;
             p.mlp.momentum = 0.5;
         },
         4, true},
        {SI, "output bias gradient omitted", [](auto& p) { p.mlp.drop_output_bias_grad = true; }},
        {SI, "hidden unit 0 frozen", [](auto& p) { p.mlp.freeze_unit0 = true; }},
        {SI, "every second hidden unit masked on odd epochs", [](auto& p) { p.mlp.mask_period = 2; }},
        {SI, "last training sample skipped", [](auto& p) { p.mlp.skip_last_sample = true; }},
        {SI, "weights reinitialised at epoch 150", [](auto& p) { p.mlp.restart_epoch = 150; }},
        {SI, "over-injected: frozen unit, masking, skipped sample, restart",
         [](auto& p) {
             p.mlp.freeze_unit0 = true;
             p.mlp.mask_period = 3;
             p.mlp.skip_last_sample = true;
             p.mlp.restart_epoch = 200;
         },
         4, true},
    };
    return author(PutId::D1, default_classifier(), make_classifier, d);
}

std::vector<MutantRecord> svm() {
    using D = Draft<SvmParams>;
    std::vector<D> d{
        {CE, "decision + 1e-3", [](auto& p) { p.decision_offset = 1e-3; }},
        {CE, "margin 1 -> 1.01", [](auto& p) { p.margin = 1.01; }},
        {CE, "features scaled by 1.01", [](auto& p) { p.feature_scale = 1.01; }},
        {CE, "lambda 0.01 -> 0.011", [](auto& p) { p.lambda = 0.011; }},
        {CE, "features scaled by 0.99", [](auto& p) { p.feature_scale = 0.99; }},
        {OS, "labels reversed", [](auto& p) { p.reverse_labels = true; }},
        {OS, "labels flipped near the boundary", [](auto& p) { p.flip_near_boundary = true; }},
        {OS, "gradient replaced by its sign", [](auto& p) { p.sign_gradient = true; }},
        {OS, "squared hinge -> hinge", [](auto& p) { p.hinge_power = 1.0; }},
        {OS, "label threshold 0.2 -> 0.5", [](auto& p) { p.label_threshold = 0.5; }},
        {HP, "lambda 0.01 -> 0.1", [](auto& p) { p.lambda = 0.1; }},
        {HP, "learning rate 0.1 -> 0.05", [](auto& p) { p.learning_rate = 0.05; }},
        {HP, "iterations 500 -> 100", [](auto& p) { p.iterations = 100; }},
        {HP, "lambda 0.01 -> 0.001", [](auto& p) { p.lambda = 0.001; }},
        {HP, "iterations 500 -> 50", [](auto& p) { p.iterations = 50; }},
        {TF, "final iterate -> averaged iterate", [](auto& p) { p.averaged_iterate = true; }},
        {TF, "constant -> decaying learning rate", [](auto& p) { p.lr_decay = 0.01; }},
        {TF, "training in single precision", [](auto& p) { p.single_precision = true; }},
        {TF, "squared hinge -> cubic hinge", [](auto& p) { p.hinge_power = 3.0; }},
        {TF, "bias regularised", [](auto& p) { p.regularise_bias = true; }},
        {SI, "bias frozen at 0", [](auto& p) { p.freeze_bias = true; }},
        {SI, "label flips skipped", [](auto& p) { p.skip_flips = true; }},
        {SI, "training stops after 30 iterations", [](auto& p) { p.early_stop = 30; }},
        {SI, "bias step scaled by 0.1", [](auto& p) { p.bias_learning_scale = 0.1; }},
        {SI, "margin 1 -> 0.5", [](auto& p) { p.margin = 0.5; }},
    };
    return author(PutId::D2, SvmParams{}, make_svm, d);
}

std::vector<MutantRecord> logistic() {
    using D = Draft<LogisticParams>;
    std::vector<D> d{
        {CE, "logit + 1e-3", [](auto& p) { p.logit_offset = 1e-3; }},
        {CE, "probability clipped to [0.2, 0.8]", [](auto& p) { p.probability_clip = 0.2; }},
        {CE, "lambda 0.05 -> 0.06", [](auto& p) { p.lambda = 0.06; }},
        {CE, "label threshold 0.3 -> 0.45", [](auto& p) { p.label_threshold = 0.45; }},
        {CE, "label threshold 0.3 -> 0.25", [](auto& p) { p.label_threshold = 0.25; }},
        {OS, "labels reversed", [](auto& p) { p.reverse_labels = true; }},
        {OS, "regulariser sign flipped", [](auto& p) { p.lambda_sign = -1.0; }},
        {OS, "lambda 5 from iteration 20 on", [](auto& p) { p.late_lambda = 5.0; }},
        {OS, "label threshold 0.3 -> -1.5", [](auto& p) { p.label_threshold = -1.5; }},
        {OS, "probability clipped to [0.45, 0.55]", [](auto& p) { p.probability_clip = 0.45; }},
        {HP, "lambda 0.05 -> 0.2", [](auto& p) { p.lambda = 0.2; }},
        {HP, "lambda 0.05 -> 0.01", [](auto& p) { p.lambda = 0.01; }},
        {HP, "Newton iterations 25 -> 3", [](auto& p) { p.iterations = 3; }},
        {HP, "Newton iterations 25 -> 2", [](auto& p) { p.iterations = 2; }},
        {HP, "Newton damping 1 -> 0.2", [](auto& p) { p.damping = 0.2; }},
        {TF, "Newton -> gradient descent", [](auto& p) { p.gradient_descent = true; }},
        {TF, "logistic -> probit link", [](auto& p) { p.probit_link = true; }},
        {TF, "feature t -> tanh(t)", [](auto& p) { p.tanh_feature = true; }},
        {TF, "sigmoid -> hard sigmoid", [](auto& p) { p.hard_sigmoid = true; }},
        {TF, "bias regularised", [](auto& p) { p.regularise_bias = true; }},
        {SI, "label flips skipped", [](auto& p) { p.skip_flips = true; }},
        {SI, "last training point dropped", [](auto& p) { p.drop_last_point = true; }},
        {SI, "Hessian scaled by 0.5", [](auto& p) { p.hessian_scale = 0.5; }},
        {SI, "lambda 0.2 from iteration 20 on", [](auto& p) { p.late_lambda = 0.2; }},
        {SI, "probability clipped to [0.15, 0.85]", [](auto& p) { p.probability_clip = 0.15; }},
    };
    return author(PutId::D3, LogisticParams{}, make_logistic, d);
}

}  // namespace

std::vector<MutantRecord> class_d_mutants(PutId put) {
    switch (put) {
        case PutId::D1: return classifier();
        case PutId::D2: return svm();
        default: return logistic();
    }
}

}  // namespace semmut::mutants
