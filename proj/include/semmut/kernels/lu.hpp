#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace semmut::kernels {

enum class PivotRule { partial, none, skip_even_steps, smallest };

struct LuOptions {
    PivotRule pivot = PivotRule::partial;
    // Threshold pivoting: swap only if |a_kk| < threshold * max |a_ik|.
    double pivot_threshold = 1.0;
    bool stale_multipliers = false;  // row swaps leave earlier multipliers in place
    bool stop_one_column_early = false;
    double multiplier_scale = 1.0;
    double pivot_offset = 0.0;
    bool pivot_search_ge = false;
    bool pivot_threshold_le = false;
};

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct LuFactors {
    MatrixX<Scalar> lu;  // unit lower L below the diagonal, U on and above
    std::vector<int> perm;
    int swaps = 0;
};

// Doolittle elimination with row pivoting, in place on a copy of a.
template <typename Scalar>
LuFactors<Scalar> lu_factor(const MatrixX<Scalar>& a, const LuOptions& opt = {}) {
    const int n = static_cast<int>(a.rows());
    LuFactors<Scalar> f{a, std::vector<int>(static_cast<std::size_t>(n)), 0};
    for (int i = 0; i < n; ++i) f.perm[static_cast<std::size_t>(i)] = i;
    const int last = opt.stop_one_column_early ? n - 2 : n - 1;
    for (int k = 0; k < last; ++k) {
        bool pivot_here = opt.pivot == PivotRule::partial ||
                          (opt.pivot == PivotRule::skip_even_steps && k % 2 == 1);
        if (opt.pivot == PivotRule::smallest) {
            int p = k;
            for (int i = k + 1; i < n; ++i)
                if (f.lu(i, k) != Scalar(0) && std::abs(f.lu(i, k)) < std::abs(f.lu(p, k))) p = i;
            if (p != k) {
                f.lu.row(k).swap(f.lu.row(p));
                std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(p)]);
                ++f.swaps;
            }
        }
        if (pivot_here) {
            int p = k;
            Scalar best = std::abs(f.lu(k, k));
            for (int i = k + 1; i < n; ++i)
                if (opt.pivot_search_ge ? std::abs(f.lu(i, k)) >= best : std::abs(f.lu(i, k)) > best) {
                    best = std::abs(f.lu(i, k));
                    p = i;
                }
            const Scalar limit = static_cast<Scalar>(opt.pivot_threshold) * best;
            if (p != k && (opt.pivot_threshold_le ? std::abs(f.lu(k, k)) <= limit : std::abs(f.lu(k, k)) < limit)) {
                if (opt.stale_multipliers)
                    f.lu.row(k).tail(n - k).swap(f.lu.row(p).tail(n - k));
                else
                    f.lu.row(k).swap(f.lu.row(p));
                std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(p)]);
                ++f.swaps;
            }
        }
        f.lu(k, k) += static_cast<Scalar>(opt.pivot_offset);
        for (int i = k + 1; i < n; ++i) {
            Scalar m = f.lu(i, k) / f.lu(k, k) * static_cast<Scalar>(opt.multiplier_scale);
            f.lu(i, k) = m;
            f.lu.row(i).tail(n - k - 1) -= m * f.lu.row(k).tail(n - k - 1);
        }
    }
    return f;
}

template <typename Scalar>
VectorX<Scalar> lu_solve(const LuFactors<Scalar>& f, const VectorX<Scalar>& b, bool permute_rhs = true) {
    const int n = static_cast<int>(f.lu.rows());
    VectorX<Scalar> y(n);
    for (int i = 0; i < n; ++i) y(i) = permute_rhs ? b(f.perm[static_cast<std::size_t>(i)]) : b(i);
    for (int i = 1; i < n; ++i) y(i) -= f.lu.row(i).head(i).dot(y.head(i));
    for (int i = n - 1; i >= 0; --i) {
        if (i + 1 < n) y(i) -= f.lu.row(i).tail(n - i - 1).dot(y.tail(n - i - 1));
        y(i) /= f.lu(i, i);
    }
    return y;
}

template <typename Scalar>
Scalar lu_determinant(const LuFactors<Scalar>& f) {
    Scalar d = (f.swaps % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (int i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
    return d;
}

}  // namespace semmut::kernels
