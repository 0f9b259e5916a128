#include <cmath>

#include "semmut/kernels/class_a.hpp"

namespace semmut::kernels {

Eigen::MatrixXd lu_system_matrix(double x) {
    Eigen::MatrixXd m(5, 5);
    m << 1e-13, 0.8, -0.5, 0.3, 0.6,
         0.9, 0.2, 0.7, -0.4, 0.1,
         -0.6, 0.5, 0.1, 0.9, -0.3,
         0.4, -0.7, 0.6, 0.2, 0.8,
         0.7, 0.3, -0.8, 0.5, 0.2;
    Eigen::VectorXd u(5), v(5);
    u << 0.0, 0.3, -0.2, 0.5, 0.1;
    v << 0.2, -0.4, 0.6, 0.1, -0.3;
    return m + x * u * v.transpose();
}

Eigen::VectorXd lu_system_rhs() {
    Eigen::VectorXd b(5);
    b << 1.0, -1.0, 2.0, 0.5, -0.5;
    return b;
}

namespace {

template <typename Scalar>
LuFactors<Scalar> factor(const LuSystemParams& p, const MatrixX<Scalar>& a) {
    LuOptions opt = p.lu;
    opt.pivot_search_ge = opt.pivot_search_ge || p.syntactic == 4;
    opt.pivot_threshold_le = opt.pivot_threshold_le || p.syntactic == 5;
    LuFactors<Scalar> f = lu_factor<Scalar>(a, opt);
    if (p.syntactic == 1) f.lu.template triangularView<Eigen::StrictlyLower>() *= Scalar(-1);
    if (p.drop_superdiagonal) {
        const auto n = f.lu.rows();
        f.lu(n - 2, n - 1) = Scalar(0);
    }
    return f;
}

Eigen::MatrixXd solver_matrix(const LuSystemParams& p, Eigen::MatrixXd a) {
    a += p.ridge * Eigen::MatrixXd::Identity(a.rows(), a.cols());
    switch (p.solver) {
        case LuSolver::symmetric_part: return 0.5 * (a + a.transpose());
        case LuSolver::transposed: return a.transpose();
        case LuSolver::lower_only: return a.triangularView<Eigen::Lower>();
        default: return a;
    }
}

Eigen::VectorXd direct_solve(const LuSystemParams& p, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    Eigen::MatrixXd m = solver_matrix(p, a);
    if (p.solver == LuSolver::neumann2 || p.solver == LuSolver::neumann3) {
        // s = sum_{j<terms} (I - D^-1 A)^j D^-1 b
        const int terms = p.solver == LuSolver::neumann2 ? 2 : 3;
        Eigen::VectorXd dinv = m.diagonal().cwiseInverse();
        Eigen::VectorXd term = dinv.cwiseProduct(b), s = term;
        for (int j = 1; j < terms; ++j) {
            term = term - dinv.cwiseProduct(m * term);
            s += term;
        }
        return s;
    }
    if (p.single_precision) {
        Eigen::MatrixXf mf = m.cast<float>();
        auto f = factor<float>(p, mf);
        Eigen::VectorXf bf = b.cast<float>();
        return lu_solve<float>(f, bf, p.permute_rhs).cast<double>();
    }
    auto f = factor<double>(p, m);
    if (p.reverse_permutation) {
        std::vector<int> inv(f.perm.size());
        for (std::size_t i = 0; i < inv.size(); ++i) inv[static_cast<std::size_t>(f.perm[i])] = static_cast<int>(i);
        f.perm = inv;
    }
    return lu_solve<double>(f, b, p.permute_rhs);
}

Eigen::VectorXd solve(const LuSystemParams& p, const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int refine) {
    Eigen::VectorXd s = direct_solve(p, a, b);
    for (int i = 0; i < refine; ++i) s += direct_solve(p, a, b - a * s);
    if (p.clamp_solution > 0.0) s = s.cwiseMax(-p.clamp_solution).cwiseMin(p.clamp_solution);
    if (p.abs_solution) s = s.cwiseAbs();
    return p.solution_scale * s;
}

template <typename Scalar>
double determinant_of(const LuSystemParams& p, const MatrixX<Scalar>& m) {
    LuFactors<Scalar> f = factor<Scalar>(p, m);
    if (p.ignore_swap_sign) f.swaps = 0;
    auto d = static_cast<double>(lu_determinant<Scalar>(f));
    return p.abs_determinant ? std::abs(d) : d;
}

double determinant(const LuSystemParams& p, const Eigen::MatrixXd& a) {
    Eigen::MatrixXd m = solver_matrix(p, a);
    if (p.single_precision) return determinant_of<float>(p, m.cast<float>());
    return determinant_of<double>(p, m);
}

double observe(const LuSystemParams& p, const Query& q) {
    Eigen::MatrixXd a = p.syntactic == 2 ? Eigen::MatrixXd(2.0 * lu_system_matrix(0.0) - lu_system_matrix(q.x))
                                         : lu_system_matrix(q.x);
    a(2, 3) += p.entry_offset;
    Eigen::VectorXd b = lu_system_rhs();
    b(2) += p.rhs_offset;
    if (p.syntactic == 3) b(0) += 1.0;
    Eigen::MatrixXd rev = a.colwise().reverse();
    Eigen::VectorXd brev = b.reverse();
    switch (q.variant) {
        case kLuSolution: return solve(p, a, b, q.fidelity)(0);
        case kLuDet: return determinant(p, a);
        case kLuDetSwapped: {
            Eigen::MatrixXd s = a;
            s.row(1).swap(s.row(3));
            return determinant(p, s);
        }
        case kLuDetTransposed: return determinant(p, a.transpose());
        case kLuDetScaledRow: {
            Eigen::MatrixXd s = a;
            s.row(2) *= 2.0;
            return determinant(p, s);
        }
        case kLuResidual: return (a * solve(p, a, b, q.fidelity) - b).lpNorm<Eigen::Infinity>();
        case kLuResidualReversed: return (rev * solve(p, rev, brev, q.fidelity) - brev).lpNorm<Eigen::Infinity>();
        case kLuSolutionReversed: return solve(p, rev, brev, q.fidelity)(0);
        case kLuSolutionScaled: {
            Eigen::VectorXd b2 = 2.0 * lu_system_rhs();
            b2(2) += p.rhs_offset;
            return solve(p, 2.0 * a, b2, q.fidelity)(0);
        }
        default: return solve(p, a, b, q.fidelity)(0);
    }
}

}  // namespace

Program make_lu_system(const LuSystemParams& p) {
    Interval domain{0.5, 2.0};
    auto f = [p](const Query& q) { return observe(p, q); };
    return Program(PutId::A2, domain, f,
                   [f, domain](const Query& q, int steps) { return sweep_trajectory(f, domain, q, steps); });
}

}  // namespace semmut::kernels
