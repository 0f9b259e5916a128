#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "semmut/kernels/class_c.hpp"

namespace semmut::kernels {

namespace {

struct Data {
    std::vector<double> t, y;
};

Data training(const GpParams& p, int fidelity) {
    const int n = 1 + (7 << fidelity);
    Data d;
    for (int i = 0; i < n; ++i) {
        double t = 0.05 + 0.9 * i / (n - 1);
        if (p.shifted_grid) t += 0.45 / (n - 1);
        d.t.push_back(t);
        d.y.push_back(std::sin(2.0 * std::numbers::pi * t) + 0.5 * t + p.target_trend * t);
    }
    if (p.drop_last) {
        d.t.pop_back();
        d.y.pop_back();
    }
    if (p.duplicate_first) {
        d.t.push_back(d.t.front());
        d.y.push_back(d.y.front());
    }
    return d;
}

double cov(const GpParams& p, double a, double b, double ell) {
    double r = std::abs(a - b);
    switch (p.kernel) {
        case GpKernel::laplacian: return p.signal_variance * std::exp(-r / ell);
        case GpKernel::matern32: {
            double s = std::sqrt(3.0) * r / ell;
            return p.signal_variance * (1.0 + s) * std::exp(-s);
        }
        case GpKernel::rbf: break;
    }
    return p.signal_variance * std::exp(-r * r / (2.0 * ell * ell));
}

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;
};

Prediction gp_predict(const GpParams& p, const Data& d, double x, double ell, double noise) {
    const auto n = static_cast<Eigen::Index>(d.t.size());
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(d.y.data(), n);
    Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(d.t.data(), n);
    double shift = 0.0, slope = 0.0;
    if (p.linear_trend) {
        Eigen::MatrixXd a(n, 2);
        a.col(0).setOnes();
        a.col(1) = t;
        Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
        shift = coef(0);
        slope = coef(1);
        y -= a * coef;
    } else if (p.centre_on_first) {
        shift = y(0);
        y.array() -= shift;
    } else if (p.centre_targets) {
        shift = y.mean() * p.centring_scale;
        y.array() -= shift;
    }
    const double trend = shift + slope * x;

    switch (p.predictor) {
        case GpPredictor::nearest: {
            Eigen::Index best = 0;
            (t.array() - x).abs().minCoeff(&best);
            return {y(best) + trend, 0.0};
        }
        case GpPredictor::linear_interp: {
            if (x <= t(0)) return {y(0) + trend, 0.0};
            for (Eigen::Index i = 1; i < n; ++i)
                if (x <= t(i)) {
                    double w = (x - t(i - 1)) / (t(i) - t(i - 1));
                    return {(1.0 - w) * y(i - 1) + w * y(i) + trend, 0.0};
                }
            return {y(n - 1) + trend, 0.0};
        }
        case GpPredictor::nadaraya_watson: {
            double num = 0.0, den = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                double k = cov(p, x, t(i), ell);
                num += k * y(i);
                den += k;
            }
            return {num / den + trend, 0.0};
        }
        default: break;
    }

    Eigen::VectorXd ks(n);
    for (Eigen::Index i = 0; i < n; ++i) ks(i) = cov(p, x, t(i), ell);

    if (p.predictor == GpPredictor::nystrom4 || p.predictor == GpPredictor::inducing4) {
        const Eigen::Index m = 4;
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < m; ++j) idx.push_back(j * (n - 1) / (m - 1));
        if (p.predictor == GpPredictor::inducing4) {
            Data sub;
            for (auto j : idx) {
                sub.t.push_back(t(j));
                sub.y.push_back(y(j));
            }
            GpParams q = p;
            q.predictor = GpPredictor::gp;
            q.centre_targets = false;
            q.linear_trend = false;
            Prediction r = gp_predict(q, sub, x, ell, noise);
            return {r.mean + trend, r.variance};
        }
        Eigen::MatrixXd kmm(m, m), kmn(m, n);
        Eigen::VectorXd kms(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            kms(a) = cov(p, x, t(idx[static_cast<std::size_t>(a)]), ell);
            for (Eigen::Index b = 0; b < m; ++b)
                kmm(a, b) = cov(p, t(idx[static_cast<std::size_t>(a)]), t(idx[static_cast<std::size_t>(b)]), ell);
            for (Eigen::Index b = 0; b < n; ++b) kmn(a, b) = cov(p, t(idx[static_cast<std::size_t>(a)]), t(b), ell);
        }
        Eigen::MatrixXd s = kmn * kmn.transpose() + noise * kmm;
        Eigen::VectorXd w = s.ldlt().solve(kmn * y);
        return {kms.dot(w) + trend, 0.0};
    }

    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) k(i, j) = cov(p, t(i), t(j), ell);
    if (!p.omit_noise) k.diagonal().array() += noise;

    Prediction r;
    if (p.single_precision) {
        Eigen::LLT<Eigen::MatrixXf> llt(k.cast<float>());
        if (llt.info() != Eigen::Success) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
        Eigen::VectorXf ksf = ks.cast<float>();
        r.mean = static_cast<double>(ksf.dot(llt.solve(y.cast<float>()))) + trend;
        r.variance = static_cast<double>(cov(p, x, x, ell) - ksf.dot(llt.solve(ksf)));
        return r;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    r.mean = ks.dot(llt.solve(y)) + trend;
    r.variance = cov(p, x, x, ell) - ks.dot(llt.solve(ks));
    return r;
}

double observe(const GpParams& p, const Query& q) {
    double ell = q.x > p.coarse_switch ? 1.0 : p.length_scale;
    double noise = p.noise;
    int fidelity = q.fidelity;
    if (q.variant == kGpMeanLengthPerturbed) {
        ell *= 1.0 + 0.2 * std::ldexp(1.0, -q.fidelity);
        fidelity = 0;
    }
    if (q.variant == kGpMeanNoisePerturbed) {
        noise += 1e-3 * std::ldexp(1.0, -q.fidelity);
        fidelity = 0;
    }
    if (q.variant == kGpVarianceLowNoise) noise /= 10.0;
    Data d = training(p, fidelity);
    if (q.variant == kGpMeanPermuted) {
        // Interleave: odd indices first, then even, reversed.
        Data s;
        for (std::size_t i = 1; i < d.t.size(); i += 2) s.t.push_back(d.t[i]), s.y.push_back(d.y[i]);
        for (std::size_t i = d.t.size(); i-- > 0;)
            if (i % 2 == 0) s.t.push_back(d.t[i]), s.y.push_back(d.y[i]);
        d = s;
    }
    Prediction r = gp_predict(p, d, q.x, ell, noise);
    if (q.variant == kGpVariance || q.variant == kGpVarianceLowNoise) return r.variance;
    double m = r.mean + p.mean_offset;
    if (p.clip > 0.0) m = std::clamp(m, -p.clip, p.clip);
    return m;
}

}  // namespace

Program make_gp(const GpParams& p) {
    Interval domain{0.0, 1.0};
    auto f = [p](const Query& q) { return observe(p, q); };
    return Program(PutId::C1, domain, f,
                   [f, domain](const Query& q, int steps) { return sweep_trajectory(f, domain, q, steps); });
}

}  // namespace semmut::kernels
