#include <cmath>
#include <numbers>
#include <vector>

#include "semmut/kernels/class_a.hpp"

namespace semmut::kernels {

namespace {

using Vec = std::vector<double>;

double initial_profile(const HeatParams& p, double xi) {
    double a = std::numbers::pi * xi;
    auto s = [&](double t) { return p.taylor_initial ? t - t * t * t / 6.0 + std::pow(t, 5) / 120.0 : std::sin(t); };
    return s(a) - (p.syntactic == 3 ? 1.3 : 0.3) * s(3.0 * a);
}

// Thomas algorithm for -r u_{i-1} + (1 + 2r) u_i - r u_{i+1} = rhs_i on the
// interior nodes, boundary values taken from u.
void implicit_step(Vec& u, double r, const Vec& rhs) {
    const std::size_t n = u.size() - 1;
    const double a = -r, b = 1.0 + 2.0 * r, c = -r;
    Vec cp(n, 0.0), dp(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double d = rhs[i];
        if (i == 1) d += r * u[0];
        if (i == n - 1) d += r * u[n];
        double den = (i == 1) ? b : b - a * cp[i - 1];
        cp[i] = c / den;
        dp[i] = (i == 1) ? d / den : (d - a * dp[i - 1]) / den;
    }
    u[n - 1] = dp[n - 1];
    for (std::size_t i = n - 2; i >= 1; --i) u[i] = dp[i] - cp[i] * u[i + 1];
}

struct Run {
    std::vector<double> centre_series;
    double value = 0.0;
};

Run simulate(const HeatParams& p, const Query& q, int record_steps) {
    const int n = (p.base_cells << q.fidelity);
    const double h = p.spacing_off_by_one ? 1.0 / (n + 1) : 1.0 / n;
    double kappa = p.kappa_reflect ? 1.1 - q.x : q.x;
    if (p.kappa_squared) kappa *= kappa;
    kappa *= p.kappa_scale;

    double dt;
    if (p.scheme == HeatScheme::implicit_dt_h) dt = 0.5 * h;
    else if (p.scheme == HeatScheme::fourth_order) dt = 0.3 * h * h;
    else if (p.syntactic == 4) dt = p.courant * h / h;
    else dt = p.courant * h * h;
    long steps = static_cast<long>(std::ceil(p.horizon / dt - 1e-9));
    dt = p.horizon / static_cast<double>(steps);
    if (p.step_fraction < 1.0) steps = static_cast<long>(std::floor(static_cast<double>(steps) * p.step_fraction));
    if (p.skip_last_step) steps -= 1;
    const double r = p.missing_square ? kappa * dt / h : kappa * dt / (h * h);

    const double amplitude = q.variant == kHeatDoubled ? 2.0 : 1.0;
    Vec u(static_cast<std::size_t>(n) + 1), next;
    for (int i = 0; i <= n; ++i) u[static_cast<std::size_t>(i)] = amplitude * initial_profile(p, i * h) + p.initial_offset;
    u[0] = p.left_boundary;
    u[static_cast<std::size_t>(n)] = p.right_boundary;

    std::size_t obs;
    if (q.variant == kHeatQuarter) obs = static_cast<std::size_t>(n / 4);
    else if (q.variant == kHeatThreeQuarter) obs = static_cast<std::size_t>(3 * n / 4);
    else obs = static_cast<std::size_t>(p.observe_left_node ? n / 2 - 1 : n / 2);

    std::vector<long> record;
    for (int k = 0; k < record_steps; ++k) record.push_back(std::lround(static_cast<double>(k) * steps / (record_steps - 1)));
    Run run;
    std::size_t next_record = 0;
    auto take = [&](long i) {
        while (next_record < record.size() && record[next_record] == i) {
            run.centre_series.push_back(u[obs]);
            ++next_record;
        }
    };
    take(0);

    const auto un = static_cast<std::size_t>(n);
    const double centre_weight = p.syntactic == 1 ? 2.0 : -2.0;
    auto more_steps = [&](long s) { return p.syntactic == 2 ? s <= steps : s < steps; };
    auto inner = [&](std::size_t i) { return p.syntactic == 5 ? i != un : i < un; };
    for (long s = 0; more_steps(s); ++s) {
        double rs = (p.negative_dt_switch && kappa > 0.55 && s % 5 == 4) ? -r : r;
        double src = p.source * dt;
        switch (p.scheme) {
            case HeatScheme::ftcs:
                if (p.in_place) {
                    for (std::size_t i = 1; i < un; ++i) u[i] += rs * (u[i - 1] - 2.0 * u[i] + u[i + 1]) + src;
                } else {
                    next = u;
                    for (std::size_t i = 1; inner(i); ++i)
                        next[i] = u[i] + rs * (u[i - 1] + centre_weight * u[i] + u[i + 1]) + src;
                    u.swap(next);
                }
                break;
            case HeatScheme::forward_stencil:
                next = u;
                for (std::size_t i = 1; i < un; ++i) {
                    double lap = (i + 2 <= un) ? u[i] - 2.0 * u[i + 1] + u[i + 2] : u[i - 1] - 2.0 * u[i] + u[i + 1];
                    next[i] = u[i] + rs * lap + src;
                }
                u.swap(next);
                break;
            case HeatScheme::fourth_order:
                next = u;
                for (std::size_t i = 1; i < un; ++i) {
                    double lap = (i >= 2 && i + 2 <= un)
                                     ? (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2]) / 12.0
                                     : u[i - 1] - 2.0 * u[i] + u[i + 1];
                    next[i] = u[i] + rs * lap + src;
                }
                u.swap(next);
                break;
            case HeatScheme::implicit_euler:
            case HeatScheme::implicit_dt_h: {
                Vec rhs(u.size());
                for (std::size_t i = 1; i < un; ++i) rhs[i] = u[i] + src;
                implicit_step(u, rs, rhs);
                break;
            }
            case HeatScheme::crank_nicolson: {
                Vec rhs(u.size());
                for (std::size_t i = 1; i < un; ++i)
                    rhs[i] = u[i] + 0.5 * rs * (u[i - 1] - 2.0 * u[i] + u[i + 1]) + src;
                implicit_step(u, 0.5 * rs, rhs);
                break;
            }
        }
        if (p.neumann_right) u[un] = u[un - 1];
        take(s + 1);
    }
    run.value = u[obs];
    return run;
}

}  // namespace

Program make_heat(const HeatParams& p) {
    return Program(
        PutId::A3, Interval{0.1, 1.0}, [p](const Query& q) { return simulate(p, q, 0).value; },
        [p](const Query& q, int steps) {
            Run r = simulate(p, q, steps);
            r.centre_series.resize(static_cast<std::size_t>(steps), r.value);
            return r.centre_series;
        });
}

}  // namespace semmut::kernels
