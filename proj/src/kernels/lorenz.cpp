#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "semmut/kernels/class_a.hpp"

namespace semmut::kernels {

namespace {

using State = Eigen::Vector3d;

State rhs(const LorenzParams& p, const State& s, double t, double dt) {
    double x = s(0), y = s(1), z = s(2);
    double dx = p.tanh_diffusion ? p.sigma * std::tanh(y - x) : p.syntactic == 1 ? p.sigma * (y + x) : p.sigma * (y - x);
    dx += p.drift_x;
    double xd = p.advanced_x_in_dy ? x + dt * dx : x;
    double growth = p.clamp_growth ? std::max(p.rho - z, 0.0) : p.rho - z;
    double dy = xd * growth - y;
    double coupling = p.abs_coupling ? std::abs(x * y) : x * y;
    if (p.saturating_coupling) coupling = 30.0 * std::tanh(coupling / 30.0);
    if (p.rectified_coupling) coupling = std::max(coupling, 0.0);
    double dz = (p.syntactic == 2 ? coupling + p.beta * z : coupling - p.beta * z) + p.drift_z + p.drift_t * t;
    return State(dx, dy, dz);
}

State step(const LorenzParams& p, const State& s, double t, double h, long n) {
    switch (p.scheme) {
        case LorenzScheme::rk4:
        case LorenzScheme::equal_weights:
        case LorenzScheme::stale_stage: {
            State k1 = rhs(p, s, t, h);
            State k2 = rhs(p, s + 0.5 * h * k1, t + 0.5 * h, h);
            State k3 = p.scheme == LorenzScheme::stale_stage ? rhs(p, s + 0.5 * h * k1, t + 0.5 * h, h)
                                                             : rhs(p, s + 0.5 * h * k2, t + 0.5 * h, h);
            State k4 = rhs(p, s + h * k3, t + h, h);
            if (p.scheme == LorenzScheme::equal_weights) return s + h / 4.0 * (k1 + k2 + k3 + k4);
            return s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        case LorenzScheme::euler: return s + h * rhs(p, s, t, h);
        case LorenzScheme::hybrid:
            if (n % 2 == 0) return s + h * rhs(p, s, t, h);
            return s + h * rhs(p, s + 0.5 * h * rhs(p, s, t, h), t + 0.5 * h, h);
        case LorenzScheme::ralston3: {
            State k1 = rhs(p, s, t, h);
            State k2 = rhs(p, s + 0.5 * h * k1, t + 0.5 * h, h);
            State k3 = rhs(p, s + 0.75 * h * k2, t + 0.75 * h, h);
            return s + h / 9.0 * (2.0 * k1 + 3.0 * k2 + 4.0 * k3);
        }
    }
    return s;
}

State initial(const LorenzParams& p, double x) {
    State s(x, x + p.y_offset, p.z0);
    if (p.swap_yz) std::swap(s(1), s(2));
    return s;
}

struct Grid {
    long steps;
    double dt;
};

Grid grid(const LorenzParams& p, double horizon, int fidelity) {
    double dt = p.fixed_dt > 0.0 ? p.fixed_dt : std::ldexp(p.base_dt, -fidelity);
    long n = std::lround(horizon / dt);
    if (p.max_steps > 0) n = std::min<long>(n, p.max_steps);
    n = std::max<long>(1, n - p.steps_short);
    return {n, horizon / std::lround(horizon / dt)};
}

// Integrates n steps from s starting at time t0, recording z at the
// requested step indices (ascending).
State integrate(const LorenzParams& p, State s, long n, double dt, double t0, const std::vector<long>& record,
                std::vector<double>* out, double* before_last = nullptr) {
    std::size_t r = 0;
    auto take = [&](long i) {
        while (out && r < record.size() && record[r] == i) {
            out->push_back(s(2));
            ++r;
        }
    };
    take(0);
    auto more = [&](long i) { return p.syntactic == 3 ? i <= n : p.syntactic == 4 ? i != n : i < n; };
    for (long i = 0; more(i); ++i) {
        if (before_last && i == n - 1) *before_last = s(2);
        s = step(p, s, t0 + static_cast<double>(i) * dt, dt, i);
        if (p.z_clamp > 0.0) s(2) = std::min(s(2), p.z_clamp);
        take(i + 1);
    }
    return s;
}

double observe(const LorenzParams& p, const Query& q) {
    double horizon = q.variant == kLorenzShort ? p.short_horizon : p.horizon;
    Grid g = grid(p, horizon, q.fidelity);
    State s0 = initial(p, q.x);
    double prev = 0.0;
    State s;
    if (q.variant == kLorenzSplit) {
        long half = g.steps / 2;
        State mid = integrate(p, s0, half, g.dt, 0.0, {}, nullptr);
        s = integrate(p, mid, g.steps - half, g.dt, 0.0, {}, nullptr, &prev);
    } else {
        s = integrate(p, s0, g.steps, g.dt, 0.0, {}, nullptr, &prev);
    }
    if (q.variant == 3) return s(0);
    return p.average_last_two ? 0.5 * (s(2) + prev) : s(2);
}

std::vector<double> trajectory(const LorenzParams& p, const Query& q, int steps) {
    Grid g = grid(p, p.horizon, q.fidelity);
    std::vector<long> record(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        record[static_cast<std::size_t>(k)] = std::lround(static_cast<double>(k) * g.steps / (steps - 1));
    std::vector<double> out;
    out.reserve(record.size());
    double prev = 0.0;
    State s = integrate(p, initial(p, q.x), g.steps, g.dt, 0.0, record, &out, &prev);
    if (p.average_last_two) out.back() = 0.5 * (s(2) + prev);
    return out;
}

}  // namespace

Program make_lorenz(const LorenzParams& p) {
    return Program(
        PutId::A1, Interval{-10.0, 10.0}, [p](const Query& q) { return observe(p, q); },
        [p](const Query& q, int steps) { return trajectory(p, q, steps); });
}

}  // namespace semmut::kernels
