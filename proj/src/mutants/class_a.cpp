#include "draft.hpp"
#include "semmut/kernels/class_a.hpp"

namespace semmut::mutants {

using namespace kernels;
using enum OperatorClass;

namespace {

std::vector<MutantRecord> lorenz() {
    using D = Draft<LorenzParams>;
    std::vector<D> d{
        {CE, "drift 1e-3 added to dx", [](auto& p) { p.drift_x = 1e-3; }},
        {CE, "drift 1e-3 added to dz", [](auto& p) { p.drift_z = 1e-3; }},
        {CE, "explicit time drift 1e-2 t added to dz", [](auto& p) { p.drift_t = 1e-2; }},
        {CE, "initial y offset 1e-3", [](auto& p) { p.y_offset = 1e-3; }},
        {CE, "rho 28 -> 28.05", [](auto& p) { p.rho = 28.05; }},
        {CE, "over-injected: drift in dx and dz, rho and z0 shifted",
         [](auto& p) {
             p.drift_x = 1e-3;
             p.drift_z = 1e-3;
             p.rho = 28.2;
             p.z0 = 20.5;
         },
         4, true},
        {OS, "x*y -> |x*y| in dz", [](auto& p) { p.abs_coupling = true; }},
        {OS, "rho - z -> max(rho - z, 0)", [](auto& p) { p.clamp_growth = true; }},
        {OS, "sigma (y - x) -> sigma tanh(y - x)", [](auto& p) { p.tanh_diffusion = true; }},
        {OS, "x*y -> 30 tanh(x*y / 30)", [](auto& p) { p.saturating_coupling = true; }},
        {OS, "x*y -> max(x*y, 0) in dz", [](auto& p) { p.rectified_coupling = true; }},
        {HP, "base step 0.01 -> 0.02", [](auto& p) { p.base_dt = 0.02; }},
        {HP, "base step 0.01 -> 0.04", [](auto& p) { p.base_dt = 0.04; }},
        {HP, "step fixed at 0.011, refinement ignored", [](auto& p) { p.fixed_dt = 0.011; }},
        {HP, "step count capped at 80", [](auto& p) { p.max_steps = 80; }},
        {HP, "step fixed at 0.005, refinement ignored", [](auto& p) { p.fixed_dt = 0.005; }},
        {TF, "state-vector y/z swap in the right-hand side", [](auto& p) { p.swap_yz = true; }},
        {TF, "RK4 -> explicit Euler", [](auto& p) { p.scheme = LorenzScheme::euler; }},
        {TF, "RK4 -> 1.5-order hybrid", [](auto& p) { p.scheme = LorenzScheme::hybrid; }},
        {TF, "RK4 stage weights -> equal weights", [](auto& p) { p.scheme = LorenzScheme::equal_weights; }},
        {TF, "RK4 -> Ralston third order", [](auto& p) { p.scheme = LorenzScheme::ralston3; }},
        {TF, "over-injected: Euler, swapped y/z, doubled step, sigma 10.5",
         [](auto& p) {
             p.scheme = LorenzScheme::euler;
             p.swap_yz = true;
             p.base_dt = 0.02;
             p.sigma = 10.5;
         },
         4, true},
        {SI, "integration stops one step early", [](auto& p) { p.steps_short = 1; }},
        {SI, "z clamped at 40 after each step", [](auto& p) { p.z_clamp = 40.0; }},
        {SI, "fourth RK4 stage reuses the third", [](auto& p) { p.scheme = LorenzScheme::stale_stage; }},
        {SI, "dy uses the already advanced x", [](auto& p) { p.advanced_x_in_dy = true; }},
        {SI, "output averages the last two states", [](auto& p) { p.average_last_two = true; }},
    };
    return author(PutId::A1, LorenzParams{}, make_lorenz, d);
}

std::vector<MutantRecord> lu_system() {
    using D = Draft<LuSystemParams>;
    std::vector<D> d{
        {CE, "b[2] + 1e-3", [](auto& p) { p.rhs_offset = 1e-3; }},
        {CE, "a[2][3] + 1e-3", [](auto& p) { p.entry_offset = 1e-3; }},
        {CE, "solution scaled by 1 + 1e-4", [](auto& p) { p.solution_scale = 1.0 + 1e-4; }},
        {CE, "elimination multipliers scaled by 1 + 1e-4", [](auto& p) { p.lu.multiplier_scale = 1.0 + 1e-4; }},
        {CE, "pivot entries + 1e-3", [](auto& p) { p.lu.pivot_offset = 1e-3; }},
        {OS, "determinant ignores the row-swap sign", [](auto& p) { p.ignore_swap_sign = true; }},
        {OS, "solution reported as |x|", [](auto& p) { p.abs_solution = true; }},
        {OS, "pivot search skipped on even steps", [](auto& p) { p.lu.pivot = PivotRule::skip_even_steps; }},
        {OS, "pivot search picks the smallest nonzero entry", [](auto& p) { p.lu.pivot = PivotRule::smallest; }},
        {OS, "rhs gathered through the inverse permutation", [](auto& p) { p.reverse_permutation = true; }},
        {OS, "solution entries clamped to [-1, 1]", [](auto& p) { p.clamp_solution = 1.0; }},
        {HP, "ridge 1e-5 added to the diagonal", [](auto& p) { p.ridge = 1e-5; }},
        {HP, "ridge 1e-4 added to the diagonal", [](auto& p) { p.ridge = 1e-4; }},
        {HP, "ridge 1e-3 added to the diagonal", [](auto& p) { p.ridge = 1e-3; }},
        {HP, "ridge 1e-2 added to the diagonal", [](auto& p) { p.ridge = 1e-2; }},
        {HP, "threshold pivoting at 1e-14", [](auto& p) { p.lu.pivot_threshold = 1e-14; }},
        {TF, "factorisation in single precision", [](auto& p) { p.single_precision = true; }},
        {TF, "LU -> two-term Neumann series", [](auto& p) { p.solver = LuSolver::neumann2; }},
        {TF, "solve with the symmetric part of A", [](auto& p) { p.solver = LuSolver::symmetric_part; }},
        {TF, "solve with A transposed", [](auto& p) { p.solver = LuSolver::transposed; }},
        {TF, "solve with the lower triangle of A", [](auto& p) { p.solver = LuSolver::lower_only; }},
        {TF, "LU -> three-term Neumann series", [](auto& p) { p.solver = LuSolver::neumann3; }},
        {SI, "partial pivoting degrades to no pivoting", [](auto& p) { p.lu.pivot = PivotRule::none; }},
        {SI, "row swaps leave earlier multipliers in place", [](auto& p) { p.lu.stale_multipliers = true; }},
        {SI, "rhs not permuted", [](auto& p) { p.permute_rhs = false; }},
        {SI, "back substitution drops u[3][4]", [](auto& p) { p.drop_superdiagonal = true; }},
        {SI, "elimination stops one column early", [](auto& p) { p.lu.stop_one_column_early = true; }},
    };
    return author(PutId::A2, LuSystemParams{}, make_lu_system, d);
}

std::vector<MutantRecord> heat() {
    using D = Draft<HeatParams>;
    std::vector<D> d{
        {CE, "source term 1e-3", [](auto& p) { p.source = 1e-3; }},
        {CE, "left boundary 0 -> 1e-3", [](auto& p) { p.left_boundary = 1e-3; }},
        {CE, "initial condition + 1e-3", [](auto& p) { p.initial_offset = 1e-3; }},
        {CE, "diffusivity scaled by 1.001", [](auto& p) { p.kappa_scale = 1.001; }},
        {CE, "right boundary 0 -> 1e-3", [](auto& p) { p.right_boundary = 1e-3; }},
        {OS, "diffusivity squared", [](auto& p) { p.kappa_squared = true; }},
        {OS, "every fifth step runs backwards for kappa > 0.55", [](auto& p) { p.negative_dt_switch = true; }},
        {OS, "coefficient kappa dt / h (missing square)", [](auto& p) { p.missing_square = true; }},
        {OS, "right boundary Dirichlet -> Neumann", [](auto& p) { p.neumann_right = true; }},
        {OS, "diffusivity read as 1.1 - kappa", [](auto& p) { p.kappa_reflect = true; }},
        {HP, "Courant number 0.4 -> 0.2", [](auto& p) { p.courant = 0.2; }},
        {HP, "Courant number 0.4 -> 0.48", [](auto& p) { p.courant = 0.48; }},
        {HP, "base grid 12 -> 8 cells", [](auto& p) { p.base_cells = 8; }},
        {HP, "base grid 12 -> 16 cells", [](auto& p) { p.base_cells = 16; }},
        {HP, "implicit Euler with dt = h / 2", [](auto& p) { p.scheme = HeatScheme::implicit_dt_h; }},
        {TF, "centred stencil -> forward stencil", [](auto& p) { p.scheme = HeatScheme::forward_stencil; }},
        {TF, "FTCS -> implicit Euler", [](auto& p) { p.scheme = HeatScheme::implicit_euler; }},
        {TF, "FTCS -> Crank-Nicolson", [](auto& p) { p.scheme = HeatScheme::crank_nicolson; }},
        {TF, "FTCS -> fourth-order stencil", [](auto& p) { p.scheme = HeatScheme::fourth_order; }},
        {TF, "initial sine -> fifth-order Taylor polynomial", [](auto& p) { p.taylor_initial = true; }},
        {SI, "update in place", [](auto& p) { p.in_place = true; }},
        {SI, "last time step skipped", [](auto& p) { p.skip_last_step = true; }},
        {SI, "grid spacing 1/(n+1)", [](auto& p) { p.spacing_off_by_one = true; }},
        {SI, "observation at node n/2 - 1", [](auto& p) { p.observe_left_node = true; }},
        {SI, "time loop truncated at 90%", [](auto& p) { p.step_fraction = 0.9; }},
    };
    return author(PutId::A3, HeatParams{}, make_heat, d);
}

}  // namespace

std::vector<MutantRecord> class_a_mutants(PutId put) {
    switch (put) {
        case PutId::A1: return lorenz();
        case PutId::A2: return lu_system();
        default: return heat();
    }
}

std::vector<MutantRecord> class_a_syntactic(PutId put) {
    switch (put) {
        case PutId::A1: {
            using S = SyntacticDraft<LorenzParams>;
            std::vector<S> d{
                {"CRP", "sigma 10 -> 11", [](auto& p) { p.sigma = 11.0; }},
                {"CRP", "rho 28 -> 29", [](auto& p) { p.rho = 29.0; }},
                {"CRP", "z0 20 -> 21", [](auto& p) { p.z0 = 21.0; }},
                {"AOR", "sigma*(y-x) -> sigma*(y+x)", [](auto& p) { p.syntactic = 1; }},
                {"AOR", "x*y - beta*z -> x*y + beta*z", [](auto& p) { p.syntactic = 2; }},
                {"ROR", "step loop i < n -> i <= n", [](auto& p) { p.syntactic = 3; }},
                {"ROR", "step loop i < n -> i != n", [](auto& p) { p.syntactic = 4; }},
            };
            return author_syntactic(put, LorenzParams{}, make_lorenz, d);
        }
        case PutId::A2: {
            using S = SyntacticDraft<LuSystemParams>;
            std::vector<S> d{
                {"CRP", "b[0] 1 -> 2", [](auto& p) { p.syntactic = 3; }},
                {"AOR", "forward substitution -= -> +=", [](auto& p) { p.syntactic = 1; }},
                {"AOR", "rank-one update + -> -", [](auto& p) { p.syntactic = 2; }},
                {"ROR", "pivot search > -> >=", [](auto& p) { p.syntactic = 4; }},
                {"ROR", "pivot threshold < -> <=", [](auto& p) { p.syntactic = 5; }},
            };
            return author_syntactic(put, LuSystemParams{}, make_lu_system, d);
        }
        default: {
            using S = SyntacticDraft<HeatParams>;
            std::vector<S> d{
                {"CRP", "initial coefficient 0.3 -> 1.3", [](auto& p) { p.syntactic = 3; }},
                {"CRP", "left boundary 0 -> 1", [](auto& p) { p.left_boundary = 1.0; }},
                {"AOR", "u[i-1] - 2u[i] + u[i+1] -> u[i-1] + 2u[i] + u[i+1]", [](auto& p) { p.syntactic = 1; }},
                {"AOR", "dt = c*h*h -> c*h/h", [](auto& p) { p.syntactic = 4; }},
                {"ROR", "time loop s < steps -> s <= steps", [](auto& p) { p.syntactic = 2; }},
                {"ROR", "space loop i < n -> i != n", [](auto& p) { p.syntactic = 5; }},
            };
            return author_syntactic(put, HeatParams{}, make_heat, d);
        }
    }
}

}  // namespace semmut::mutants
