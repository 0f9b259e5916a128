#include "draft.hpp"
#include "semmut/kernels/class_c.hpp"

namespace semmut::mutants {

using namespace kernels;
using enum OperatorClass;

namespace {

std::vector<MutantRecord> gp() {
    using D = Draft<GpParams>;
    std::vector<D> d{
        {CE, "prediction + 1e-3", [](auto& p) { p.mean_offset = 1e-3; }},
        {CE, "targets gain a 0.01 t trend", [](auto& p) { p.target_trend = 0.01; }},
        {CE, "targets centred on the first sample", [](auto& p) { p.centre_on_first = true; }},
        {CE, "subtracted mean scaled by 0.999", [](auto& p) { p.centring_scale = 0.999; }},
        {CE, "prediction clipped to [-1, 1]", [](auto& p) { p.clip = 1.0; }},
        {OS, "length scale switches to 1 above x = 0.8", [](auto& p) { p.coarse_switch = 0.8; }},
        {OS, "observation noise omitted from the kernel matrix", [](auto& p) { p.omit_noise = true; }},
        {OS, "noise level 1e-4 -> 1e-1", [](auto& p) { p.noise = 0.1; }},
        {OS, "training grid shifted by half a cell", [](auto& p) { p.shifted_grid = true; }},
        {OS, "last training point dropped", [](auto& p) { p.drop_last = true; }},
        {HP, "length scale 0.2 -> 0.15", [](auto& p) { p.length_scale = 0.15; }},
        {HP, "length scale 0.2 -> 0.3", [](auto& p) { p.length_scale = 0.3; }},
        {HP, "signal variance 1 -> 2", [](auto& p) { p.signal_variance = 2.0; }},
        {HP, "noise level 1e-4 -> 1e-3", [](auto& p) { p.noise = 1e-3; }},
        {HP, "noise level 1e-4 -> 1e-6", [](auto& p) { p.noise = 1e-6; }},
        {TF, "RBF -> Laplacian kernel", [](auto& p) { p.kernel = GpKernel::laplacian; }},
        {TF, "RBF -> Matern 3/2 kernel", [](auto& p) { p.kernel = GpKernel::matern32; }},
        {TF, "GP -> nearest-neighbour predictor", [](auto& p) { p.predictor = GpPredictor::nearest; }},
        {TF, "GP -> linear interpolation", [](auto& p) { p.predictor = GpPredictor::linear_interp; }},
        {TF, "GP -> Nadaraya-Watson smoother", [](auto& p) { p.predictor = GpPredictor::nadaraya_watson; }},
        {SI, "solve in single precision", [](auto& p) { p.single_precision = true; }},
        {SI, "4-point Nystrom approximation", [](auto& p) { p.predictor = GpPredictor::nystrom4; }},
        {SI, "4 inducing points only", [](auto& p) { p.predictor = GpPredictor::inducing4; }},
        {SI, "first training point duplicated", [](auto& p) { p.duplicate_first = true; }},
        {SI, "linear trend removed before fitting", [](auto& p) { p.linear_trend = true; }},
    };
    return author(PutId::C1, GpParams{}, make_gp, d);
}

std::vector<MutantRecord> pce() {
    using D = Draft<PceParams>;
    std::vector<D> d{
        {CE, "c0 + 1e-3", [](auto& p) { p.c0_offset = 1e-3; }},
        {CE, "c1 + 1e-3", [](auto& p) { p.c1_offset = 1e-3; }},
        {CE, "model output + 1e-3", [](auto& p) { p.model_offset = 1e-3; }},
        {CE, "projection norm scaled by 1.001", [](auto& p) { p.norm_scale = 1.001; }},
        {CE, "trapezoid endpoint weight 0.5 -> 0.51", [](auto& p) { p.endpoint_weight = 0.51; }},
        {CE, "variance term k = 1 divided by 2k + 2", [](auto& p) { p.k1_divisor_off = true; }},
        {OS, "parameter read as 2.2 - a", [](auto& p) { p.reflect_input = true; }},
        {OS, "coefficients c2 and c3 swapped", [](auto& p) { p.swap_c2_c3 = true; }},
        {OS, "variance skips the k = 1 term", [](auto& p) { p.skip_k1 = true; }},
        {OS, "quadrature nodes shifted by 0.01", [](auto& p) { p.shift_nodes = 0.01; }},
        {OS, "exp model -> cubic Taylor model", [](auto& p) { p.taylor_model = true; }},
        {HP, "expansion order 4 -> 3", [](auto& p) { p.order = 3; }},
        {HP, "expansion order 4 -> 5", [](auto& p) { p.order = 5; }},
        {HP, "base quadrature intervals 32 -> 16", [](auto& p) { p.base_intervals = 16; }},
        {HP, "base quadrature intervals 32 -> 24", [](auto& p) { p.base_intervals = 24; }},
        {HP, "base quadrature intervals 32 -> 48", [](auto& p) { p.base_intervals = 48; }},
        {TF, "Legendre -> Chebyshev basis", [](auto& p) { p.basis = PceBasis::chebyshev; }},
        {TF, "Legendre -> monomial basis", [](auto& p) { p.basis = PceBasis::monomial; }},
        {TF, "trapezoid -> Simpson quadrature", [](auto& p) { p.quadrature = Quadrature::simpson; }},
        {TF, "trapezoid -> left Riemann sum", [](auto& p) { p.quadrature = Quadrature::left_riemann; }},
        {TF, "trapezoid -> Gauss-Legendre quadrature", [](auto& p) { p.quadrature = Quadrature::gauss_legendre; }},
        {SI, "projection -> least squares", [](auto& p) { p.least_squares = true; }},
        {SI, "high-order coefficients copy c_{k-2}", [](auto& p) { p.retain_low_order = true; }},
        {SI, "trapezoid -> midpoint rule", [](auto& p) { p.quadrature = Quadrature::midpoint; }},
        {SI, "trapezoid endpoint weight 0.5 -> 0.45", [](auto& p) { p.endpoint_weight = 0.45; }},
        {SI, "expansion order 4 -> 2", [](auto& p) { p.order = 2; }},
    };
    return author(PutId::C2, PceParams{}, make_pce, d);
}

std::vector<MutantRecord> surrogate() {
    using D = Draft<SurrogateParams>;
    std::vector<D> d{
        {CE, "prediction + 1e-3", [](auto& p) { p.output_offset = 1e-3; }},
        {CE, "targets + 0.01", [](auto& p) { p.target_offset = 0.01; }},
        {CE, "input scale 3 -> 3.1", [](auto& p) { p.input_scale = 3.1; }},
        {CE, "weight decay 1e-4", [](auto& p) { p.mlp.weight_decay = 1e-4; }},
        {CE, "input normalisation removed", [](auto& p) { p.normalise_input = false; }},
        {CE, "over-injected: output, target, input scale and decay all shifted",
         [](auto& p) {
             p.output_offset = 1e-3;
             p.target_offset = 0.01;
             p.input_scale = 3.1;
             p.mlp.weight_decay = 1e-4;
         },
         4, true},
        {OS, "targets exp(-t) instead of 1 - exp(-t)", [](auto& p) { p.reflect_targets = true; }},
        {OS, "targets evaluated at 0.7 t", [](auto& p) { p.phase_shift = 0.3; }},
        {OS, "first-layer gradient sign flipped", [](auto& p) { p.mlp.gradient_sign_flip_layer1 = -1.0; }},
        {OS, "targets above 0.5 weighted 2x", [](auto& p) { p.mlp.positive_weight = 2.0; }},
        {OS, "initial weights scaled by 3", [](auto& p) { p.mlp.init_scale = 3.0; }},
        {OS, "over-injected: reflected targets, phase shift, init and weights",
         [](auto& p) {
             p.reflect_targets = true;
             p.phase_shift = 0.2;
             p.mlp.init_scale = 2.0;
             p.mlp.positive_weight = 3.0;
         },
         4, true},
        {HP, "learning rate 0.2 -> 0.1", [](auto& p) { p.mlp.learning_rate = 0.1; }},
        {HP, "learning rate 0.2 -> 0.3", [](auto& p) { p.mlp.learning_rate = 0.3; }},
        {HP, "epochs 300 -> 150", [](auto& p) { p.mlp.epochs = 150; }},
        {HP, "max_iter 300 -> 5", [](auto& p) { p.mlp.epochs = 5; }},
        {HP, "hidden units 6 -> 3", [](auto& p) { p.mlp.hidden = 3; }},
        {HP, "over-injected: rate, epochs, width and init all changed",
         [](auto& p) {
             p.mlp.learning_rate = 0.3;
             p.mlp.epochs = 200;
             p.mlp.hidden = 4;
             p.mlp.init_scale = 1.5;
         },
         4, true},
        {TF, "tanh -> ReLU activation", [](auto& p) { p.mlp.activation = Activation::relu; }},
        {TF, "tanh -> sigmoid activation", [](auto& p) { p.mlp.activation = Activation::sigmoid; }},
        {TF, "tanh -> softplus activation", [](auto& p) { p.mlp.activation = Activation::softplus; }},
        {TF, "network -> cubic least squares", [](auto& p) { p.polynomial = true; }},
        {TF, "MSE -> MAE loss", [](auto& p) { p.mlp.loss = Loss::mae; }},
        {TF, "over-injected: ReLU, MAE, width 4, momentum 0.5",
         [](auto& p) {
             p.mlp.activation = Activation::relu;
             p.mlp.loss = Loss::mae;
             p.mlp.hidden = 4;
             p.mlp.momentum = 0.5;
         },
         4, true},
        {SI, "refinement stops after one level", [](auto& p) { p.truncate_refinement = true; }},
        {SI, "momentum 0.9", [](auto& p) { p.mlp.momentum = 0.9; }},
        {SI, "every second hidden unit masked on odd epochs", [](auto& p) { p.mlp.mask_period = 2; }},
        {SI, "last training sample skipped", [](auto& p) { p.mlp.skip_last_sample = true; }},
        {SI, "weights reinitialised at epoch 200", [](auto& p) { p.mlp.restart_epoch = 200; }},
        {SI, "over-injected: truncated refinement, masking, skipped sample, frozen unit",
         [](auto& p) {
             p.truncate_refinement = true;
             p.mlp.mask_period = 2;
             p.mlp.skip_last_sample = true;
             p.mlp.freeze_unit0 = true;
         },
         4, true},
    };
    return author(PutId::C3, default_surrogate(), make_surrogate, d);
}

}  // namespace

std::vector<MutantRecord> class_c_mutants(PutId put) {
    switch (put) {
        case PutId::C1: return gp();
        case PutId::C2: return pce();
        default: return surrogate();
    }
}

}  // namespace semmut::mutants
