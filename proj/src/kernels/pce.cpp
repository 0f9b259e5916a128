#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "semmut/kernels/class_c.hpp"

namespace semmut::kernels {

namespace {

struct Rule {
    std::vector<double> nodes, weights;
};

Rule gauss_legendre(int n) {
    Rule r;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes.push_back(x);
        r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return r;
}

Rule rule(const PceParams& p, int fidelity) {
    const int m = p.base_intervals << fidelity;
    const double h = 2.0 / m;
    Rule r;
    switch (p.quadrature) {
        case Quadrature::gauss_legendre: return gauss_legendre(std::min(m, 24));
        case Quadrature::midpoint:
            for (int i = 0; i < m; ++i) {
                r.nodes.push_back(-1.0 + (i + 0.5) * h);
                r.weights.push_back(h);
            }
            return r;
        default: break;
    }
    for (int i = 0; i <= m; ++i) {
        r.nodes.push_back(-1.0 + i * h + p.shift_nodes);
        double w = h;
        switch (p.quadrature) {
            case Quadrature::trapezoid:
                if (i == 0 || i == m) w = p.endpoint_weight * h;
                break;
            case Quadrature::simpson:
                w = (i == 0 || i == m) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
                break;
            case Quadrature::left_riemann: w = (i == m) ? 0.0 : h; break;
            default: break;
        }
        r.weights.push_back(w);
    }
    return r;
}

std::vector<double> basis(const PceParams& p, double xi, int order) {
    std::vector<double> b(static_cast<std::size_t>(order) + 1);
    b[0] = 1.0;
    if (order >= 1) b[1] = xi;
    for (int k = 2; k <= order; ++k) {
        auto ku = static_cast<std::size_t>(k);
        switch (p.basis) {
            case PceBasis::legendre: b[ku] = ((2.0 * k - 1.0) * xi * b[ku - 1] - (k - 1.0) * b[ku - 2]) / k; break;
            case PceBasis::chebyshev: b[ku] = 2.0 * xi * b[ku - 1] - b[ku - 2]; break;
            case PceBasis::monomial: b[ku] = xi * b[ku - 1]; break;
        }
    }
    return b;
}

double model(const PceParams& p, double a, double xi) {
    double z = a * xi;
    double g = p.taylor_model ? 1.0 + z + z * z / 2.0 + z * z * z / 6.0 : std::exp(z);
    return g;
}

std::vector<double> coefficients(const PceParams& p, double a, double scale, int order, const Rule& r) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    if (p.least_squares) {
        const auto n = static_cast<Eigen::Index>(r.nodes.size());
        Eigen::MatrixXd v(n, order + 1);
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto b = basis(p, r.nodes[static_cast<std::size_t>(i)], order);
            for (int k = 0; k <= order; ++k) v(i, k) = b[static_cast<std::size_t>(k)];
            y(i) = scale * model(p, a, r.nodes[static_cast<std::size_t>(i)]) + p.model_offset;
        }
        Eigen::VectorXd sol = v.colPivHouseholderQr().solve(y);
        for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = sol(k);
    } else {
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            auto b = basis(p, r.nodes[i], order);
            double g = scale * model(p, a, r.nodes[i]) + p.model_offset;
            for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] += r.weights[i] * g * b[static_cast<std::size_t>(k)];
        }
        for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] *= (2.0 * k + 1.0) / (2.0 * p.norm_scale);
    }
    c[0] += p.c0_offset;
    if (c.size() > 1) c[1] += p.c1_offset;
    if (p.swap_c2_c3 && order >= 3) std::swap(c[2], c[3]);
    if (p.retain_low_order)
        for (int k = order; k >= 3; --k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 2)];
    return c;
}

double captured_variance(const PceParams& p, const std::vector<double>& c) {
    double v = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (p.skip_k1 && k == 1) continue;
        double div = 2.0 * static_cast<double>(k) + 1.0;
        if (p.k1_divisor_off && k == 1) div += 1.0;
        v += c[k] * c[k] / div;
    }
    return v;
}

double observe(const PceParams& p, Query q) {
    if (p.reflect_input) q.x = 2.2 - q.x;
    Rule r = rule(p, q.fidelity);
    switch (q.variant) {
        case kPceMean: return coefficients(p, q.x, 1.0, p.order, r)[0];
        case kPceScaledVariance: return captured_variance(p, coefficients(p, q.x, 2.0, p.order, r));
        case kPceLowerOrder: return captured_variance(p, coefficients(p, q.x, 1.0, p.order - 2, r));
        case kPceHigherOrder: return captured_variance(p, coefficients(p, q.x, 1.0, p.order + 2, r));
        case kPceDirectMean: {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * (model(p, q.x, r.nodes[i]) + p.model_offset) * 1.0;
            return 0.5 * s;
        }
        default: return captured_variance(p, coefficients(p, q.x, 1.0, p.order, r));
    }
}

}  // namespace

Program make_pce(const PceParams& p) {
    Interval domain{0.2, 2.0};
    auto f = [p](const Query& q) { return observe(p, q); };
    return Program(PutId::C2, domain, f,
                   [f, domain](const Query& q, int steps) { return sweep_trajectory(f, domain, q, steps); });
}

}  // namespace semmut::kernels
