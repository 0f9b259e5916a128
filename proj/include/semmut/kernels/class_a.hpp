#pragma once

#include "semmut/kernels/lu.hpp"
#include "semmut/program.hpp"

namespace semmut::kernels {

// A1: Lorenz-63 from (x, x, z0), observable z at the horizon.
enum class LorenzScheme { rk4, euler, hybrid, equal_weights, ralston3, stale_stage };

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;
    double z0 = 20.0;
    double y_offset = 0.0;
    double horizon = 1.0;
    double short_horizon = 0.05;
    double base_dt = 0.01;
    LorenzScheme scheme = LorenzScheme::rk4;
    double drift_x = 0.0;
    double drift_z = 0.0;
    double drift_t = 0.0;  // dz += drift_t * t
    bool swap_yz = false;
    bool abs_coupling = false;      // x*y -> |x*y| in dz
    bool clamp_growth = false;      // rho - z -> max(rho - z, 0)
    bool tanh_diffusion = false;    // sigma*(y-x) -> sigma*tanh(y-x)
    bool saturating_coupling = false;
    bool rectified_coupling = false;  // x*y -> max(x*y, 0)
    double z_clamp = 0.0;           // > 0 clamps z from above after each step
    bool advanced_x_in_dy = false;  // dy uses x + dt*dx
    int steps_short = 0;            // integrate N - steps_short steps
    bool average_last_two = false;
    int max_steps = 0;              // > 0 caps the step count
    double fixed_dt = 0.0;          // > 0 ignores refinement
    // First-order syntactic edits: 1 sigma*(y+x), 2 x*y + beta*z,
    // 3 loop bound i <= n, 4 loop bound i != n.
    int syntactic = 0;
};

inline constexpr int kLorenzScalar = 0;
inline constexpr int kLorenzShort = 1;
inline constexpr int kLorenzSplit = 2;

Program make_lorenz(const LorenzParams& p = {});

// A2: partial-pivoting LU solve of a 5x5 system with a tiny leading entry.
enum class LuSolver { lu, symmetric_part, transposed, lower_only, neumann2, neumann3 };

struct LuSystemParams {
    LuOptions lu{};
    LuSolver solver = LuSolver::lu;
    bool single_precision = false;
    bool permute_rhs = true;
    double ridge = 0.0;
    double rhs_offset = 0.0;       // added to b[2]
    double entry_offset = 0.0;     // added to a[2][3]
    double solution_scale = 1.0;
    bool drop_superdiagonal = false;  // back substitution ignores u[n-2][n-1]
    bool ignore_swap_sign = false;
    bool abs_determinant = false;
    bool abs_solution = false;
    bool reverse_permutation = false;  // rhs gathered through the inverse permutation
    double clamp_solution = 0.0;       // > 0 clamps solution entries
    // 1 forward substitution += , 2 update sign x u v^T -> -x u v^T,
    // 3 b[0] + 1, 4 pivot search >=, 5 pivot threshold <=.
    int syntactic = 0;
};

inline constexpr int kLuSolution = 0;
inline constexpr int kLuDet = 1;
inline constexpr int kLuDetSwapped = 2;
inline constexpr int kLuDetTransposed = 3;
inline constexpr int kLuDetScaledRow = 4;
inline constexpr int kLuResidual = 5;
inline constexpr int kLuResidualReversed = 6;
inline constexpr int kLuSolutionReversed = 7;
inline constexpr int kLuSolutionScaled = 8;

Eigen::MatrixXd lu_system_matrix(double x);
Eigen::VectorXd lu_system_rhs();
Program make_lu_system(const LuSystemParams& p = {});

// A3: explicit FTCS heat equation on [0,1], x = diffusivity.
enum class HeatScheme { ftcs, forward_stencil, implicit_euler, crank_nicolson, implicit_dt_h, fourth_order };

struct HeatParams {
    double horizon = 0.05;
    int base_cells = 12;
    double courant = 0.4;  // dt = courant * h^2
    double source = 0.0;
    double left_boundary = 0.0;
    double right_boundary = 0.0;
    double kappa_scale = 1.0;
    bool kappa_squared = false;
    double initial_offset = 0.0;
    bool taylor_initial = false;
    bool negative_dt_switch = false;  // every 5th step runs backwards when kappa > 0.55
    bool missing_square = false;      // coefficient kappa*dt/h
    double step_fraction = 1.0;       // < 1 truncates the time loop
    HeatScheme scheme = HeatScheme::ftcs;
    bool in_place = false;
    bool skip_last_step = false;
    bool spacing_off_by_one = false;  // h = 1/(n+1)
    bool observe_left_node = false;
    bool neumann_right = false;
    bool kappa_reflect = false;  // kappa -> 1.1 - kappa
    // 1 stencil u[i-1] + 2u[i] + u[i+1], 2 time loop s <= steps,
    // 3 initial 0.3 -> 1.3, 4 dt = courant*h/h, 5 space loop i != n.
    int syntactic = 0;
};

inline constexpr int kHeatCentre = 0;
inline constexpr int kHeatDoubled = 1;
inline constexpr int kHeatQuarter = 2;
inline constexpr int kHeatThreeQuarter = 3;

Program make_heat(const HeatParams& p = {});

}  // namespace semmut::kernels
