#pragma once

#include "semmut/kernels/mlp.hpp"
#include "semmut/program.hpp"

namespace semmut::kernels {

// C1: GP regression (RBF kernel) of sin(2 pi t) + t/2 from 1 + 7*2^f nested
// training points on [0.05, 0.95]; x = prediction location.
enum class GpKernel { rbf, laplacian, matern32 };
enum class GpPredictor { gp, nearest, linear_interp, nadaraya_watson, nystrom4, inducing4 };

struct GpParams {
    double length_scale = 0.2;
    double signal_variance = 1.0;
    double noise = 1e-4;
    bool omit_noise = false;
    double mean_offset = 0.0;
    double target_trend = 0.0;       // targets + target_trend * t
    double centring_scale = 1.0;     // subtracted mean is scaled
    bool centre_targets = true;
    GpKernel kernel = GpKernel::rbf;
    GpPredictor predictor = GpPredictor::gp;
    bool single_precision = false;
    bool linear_trend = false;       // fit and remove a linear trend first
    double coarse_switch = 2.0;      // x above this uses length scale 1.0
    bool drop_last = false;
    bool duplicate_first = false;
    double clip = 0.0;               // > 0 clips the prediction to [-clip, clip]
    bool shifted_grid = false;
    bool centre_on_first = false;  // subtract the first target instead of the mean
};

inline constexpr int kGpMean = 0;
inline constexpr int kGpMeanPermuted = 1;
inline constexpr int kGpVariance = 2;
inline constexpr int kGpVarianceLowNoise = 3;
inline constexpr int kGpMeanLengthPerturbed = 4;  // length * (1 + 0.2 * 2^-f), base data
inline constexpr int kGpMeanNoisePerturbed = 5;   // noise + 1e-3 * 2^-f, base data

Program make_gp(const GpParams& p = {});

// C2: Legendre PCE of exp(x xi), xi ~ U[-1,1], projection by composite
// trapezoid on 32*2^f intervals; output the captured variance.
enum class Quadrature { trapezoid, simpson, left_riemann, gauss_legendre, midpoint };
enum class PceBasis { legendre, chebyshev, monomial };

struct PceParams {
    int order = 4;
    int base_intervals = 32;
    double norm_scale = 1.0;          // (2k+1)/2 -> (2k+1)/(2 * norm_scale)
    double c0_offset = 0.0;
    double c1_offset = 0.0;
    double model_offset = 0.0;
    double endpoint_weight = 0.5;
    bool k1_divisor_off = false;      // variance term k=1 divided by 2k+2
    bool swap_c2_c3 = false;
    PceBasis basis = PceBasis::legendre;
    Quadrature quadrature = Quadrature::trapezoid;
    bool taylor_model = false;
    bool least_squares = false;
    bool retain_low_order = false;    // c_k for k >= 3 replaced by c_{k-2}
    bool skip_k1 = false;
    double shift_nodes = 0.0;
    bool reflect_input = false;  // a -> 2.2 - a
};

inline constexpr int kPceVariance = 0;
inline constexpr int kPceMean = 1;
inline constexpr int kPceScaledVariance = 2;
inline constexpr int kPceLowerOrder = 3;
inline constexpr int kPceDirectMean = 4;
inline constexpr int kPceHigherOrder = 5;

Program make_pce(const PceParams& p = {});

// C3: MLP surrogate of 1 - exp(-t) on [0, 3] trained on 12 points; x = t.
struct SurrogateParams {
    MlpConfig mlp{};
    double output_offset = 0.0;
    double target_offset = 0.0;
    double input_scale = 3.0;
    bool normalise_input = true;
    double phase_shift = 0.0;   // targets evaluated at t (1 - phase_shift)
    bool polynomial = false;    // cubic least squares instead of a network
    bool truncate_refinement = false;
    bool reflect_targets = false;  // exp(-t) instead of 1 - exp(-t)
};

inline constexpr int kSurrogatePrediction = 0;
inline constexpr int kSurrogatePermuted = 1;
inline constexpr int kSurrogateAmplified = 2;
inline constexpr int kSurrogateLoss = 3;
inline constexpr int kSurrogateLossLong = 4;
inline constexpr int kSurrogateLossShort = 5;

SurrogateParams default_surrogate();
Program make_surrogate(const SurrogateParams& p);

}  // namespace semmut::kernels
