#include "semmut/avp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <variant>

#include "semmut/mr_catalog.hpp"
#include "semmut/program.hpp"
#include "semmut/stats.hpp"

namespace semmut {

AvpVerdict check_tolerance_equality(double lhs, double rhs, double eps) {
    if (!(eps > 0.0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
    double d = std::abs(lhs - rhs);
    AvpVerdict v;
    v.statistic = d;
    v.verdict = (d <= eps) ? Verdict::pass : Verdict::fail;
    if (!std::isfinite(d)) {
        v.verdict = Verdict::fail;
        v.detail = "non-finite";
    }
    return v;
}

SignedRankResult signed_rank_test(std::span<const double> diffs, Alternative alt) {
    std::vector<double> nz;
    for (double d : diffs) {
        if (!std::isfinite(d)) fail(ErrorKind::InvalidArgument, "non-finite difference");
        if (d != 0.0) nz.push_back(d);
    }
    SignedRankResult r;
    r.n = static_cast<int>(nz.size());
    if (r.n == 0) return r;

    std::vector<double> mag(nz.size());
    std::transform(nz.begin(), nz.end(), mag.begin(), [](double d) { return std::abs(d); });
    std::vector<double> ranks = midranks(mag);
    for (std::size_t i = 0; i < nz.size(); ++i) (nz[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];

    auto n = static_cast<std::size_t>(r.n);
    if (n <= 25) {
        // Doubled midranks are integers; count subsets by their rank sum.
        std::vector<int> twice(n);
        for (std::size_t i = 0; i < n; ++i) twice[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
        int total = std::accumulate(twice.begin(), twice.end(), 0);
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        int reach = 0;
        for (int t : twice) {
            for (int s = reach; s >= 0; --s)
                if (count[static_cast<std::size_t>(s)] != 0.0)
                    count[static_cast<std::size_t>(s + t)] += count[static_cast<std::size_t>(s)];
            reach += t;
        }
        double all = std::ldexp(1.0, static_cast<int>(n));
        int obs = static_cast<int>(std::lround(2.0 * r.w_plus));
        double upper = 0.0, lower = 0.0;
        for (int s = 0; s <= total; ++s) {
            if (s >= obs) upper += count[static_cast<std::size_t>(s)];
            if (s <= obs) lower += count[static_cast<std::size_t>(s)];
        }
        upper /= all;
        lower /= all;
        switch (alt) {
            case Alternative::greater: r.p_value = upper; break;
            case Alternative::less: r.p_value = lower; break;
            case Alternative::two_sided: r.p_value = std::min(1.0, 2.0 * std::min(upper, lower)); break;
        }
        r.exact = true;
        return r;
    }

    double nn = static_cast<double>(n);
    double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    std::vector<double> sorted = mag;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        double t = static_cast<double>(j - i);
        var -= (t * t * t - t) / 48.0;
        i = j;
    }
    double sd = std::sqrt(var);
    auto upper_tail = [&](double w) { return normal_sf((w - mean - 0.5) / sd); };
    auto lower_tail = [&](double w) { return normal_cdf((w - mean + 0.5) / sd); };
    switch (alt) {
        case Alternative::greater: r.p_value = upper_tail(r.w_plus); break;
        case Alternative::less: r.p_value = lower_tail(r.w_plus); break;
        case Alternative::two_sided:
            r.p_value = std::min(1.0, 2.0 * std::min(upper_tail(r.w_plus), lower_tail(r.w_plus)));
            break;
    }
    r.exact = false;
    return r;
}

AvpVerdict wilcoxon_signed_rank(std::span<const double> diffs, double alpha, Alternative alt) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::InvalidArgument, "alpha outside (0,1)");
    if (diffs.empty()) fail(ErrorKind::EmptySample, "no differences");
    AvpVerdict v;
    for (double d : diffs)
        if (!std::isfinite(d)) {
            v.verdict = Verdict::fail;
            v.detail = "non-finite";
            return v;
        }
    SignedRankResult r = signed_rank_test(diffs, alt);
    v.statistic = r.w_plus;
    v.p_value = r.p_value;
    if (r.n == 0) {
        v.detail = "degenerate sample: all differences zero";
        return v;
    }
    v.verdict = (r.p_value >= alpha) ? Verdict::pass : Verdict::fail;
    v.detail = r.exact ? "exact" : "normal approximation";
    return v;
}

ConvergenceEstimate convergence_order(std::span<const std::pair<double, double>> errors) {
    if (errors.size() < 3) fail(ErrorKind::IrregularRefinement, "need at least 3 levels");
    for (const auto& [h, e] : errors) {
        if (!(e > 0.0) || !std::isfinite(e)) fail(ErrorKind::NonPositiveError, "error must be positive");
        if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::IrregularRefinement, "step must be positive");
    }
    double factor = errors[0].first / errors[1].first;
    if (!(factor > 1.0)) fail(ErrorKind::IrregularRefinement, "steps must decrease");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        double f = errors[i].first / errors[i + 1].first;
        if (std::abs(f - factor) > 1e-9 * factor)
            fail(ErrorKind::IrregularRefinement, "refinement factor is not constant");
        sum += std::log(errors[i].second / errors[i + 1].second) / std::log(factor);
    }
    ConvergenceEstimate c;
    c.observed_order = sum / static_cast<double>(errors.size() - 1);
    c.residual_ratio = errors.back().second / errors[errors.size() - 2].second;
    return c;
}

double dtw_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) fail(ErrorKind::EmptySequence, "DTW needs nonempty sequences");
    const std::size_t n = a.size(), m = b.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = inf;
        for (std::size_t j = 1; j <= m; ++j) {
            double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = std::abs(a[i - 1] - b[j - 1]) + best;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

namespace {

AvpVerdict non_finite(std::string why) {
    AvpVerdict v;
    v.verdict = Verdict::fail;
    v.detail = "non-finite: " + std::move(why);
    return v;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

AvpVerdict judge(const EqualityObservation& o, const MrInstance& mr) {
    if (!all_finite(o.lhs) || !all_finite(o.rhs)) return non_finite("equality sample");
    if (o.lhs.empty()) return AvpVerdict{Verdict::pass, 0.0, std::nullopt, "no sample in region"};
    double worst = 0.0;
    for (std::size_t i = 0; i < o.lhs.size(); ++i) {
        if (mr.exact) {
            // Bitwise comparison; NaN never reaches here.
            if (o.lhs[i] != o.rhs[i]) return AvpVerdict{Verdict::fail, std::abs(o.lhs[i] - o.rhs[i]),
                                                         std::nullopt, "exact mismatch"};
            continue;
        }
        AvpVerdict v = check_tolerance_equality(o.lhs[i], o.rhs[i], mr.tolerance);
        worst = std::max(worst, *v.statistic);
        if (!v.passed()) return AvpVerdict{Verdict::fail, worst, std::nullopt, "tolerance exceeded"};
    }
    return AvpVerdict{Verdict::pass, worst, std::nullopt, {}};
}

AvpVerdict judge(const OrderingObservation& o, const MrInstance& mr) {
    if (!all_finite(o.violations)) return non_finite("ordering sample");
    if (o.violations.empty()) return AvpVerdict{Verdict::pass, 0.0, 1.0, "no sample in region"};
    return wilcoxon_signed_rank(o.violations, mr.tolerance, Alternative::greater);
}

AvpVerdict judge(const ConvergenceObservation& o, const MrInstance& mr) {
    AvpVerdict v;
    for (const auto& [h, e] : o.errors)
        if (!std::isfinite(e)) return non_finite("convergence error");
    if (o.errors.empty()) return AvpVerdict{Verdict::pass, std::nullopt, std::nullopt, "no sample in region"};
    try {
        ConvergenceEstimate c = convergence_order(o.errors);
        v.statistic = c.observed_order;
        bool ok = std::abs(c.observed_order - mr.expected_order) <= mr.tolerance && c.residual_ratio < 1.0;
        v.verdict = ok ? Verdict::pass : Verdict::fail;
        v.detail = "order " + std::to_string(c.observed_order) + ", residual ratio " +
                   std::to_string(c.residual_ratio);
    } catch (const Error& e) {
        v.verdict = Verdict::fail;
        v.detail = e.what();
    }
    return v;
}

AvpVerdict judge(const TrajectoryObservation& o, const MrInstance& mr) {
    if (!all_finite(o.a) || !all_finite(o.b)) return non_finite("trajectory");
    if (o.a.empty() && o.b.empty()) return AvpVerdict{Verdict::pass, 0.0, std::nullopt, "no sample in region"};
    double d = dtw_distance(o.a, o.b);
    AvpVerdict v;
    v.statistic = d;
    v.verdict = (d <= mr.tolerance) ? Verdict::pass : Verdict::fail;
    return v;
}

}  // namespace

AvpVerdict avp_verify(const Program& program, const MrInstance& mr, const MrContext& ctx) {
    if (mr.mp == MetaPattern::Eq && !mr.exact)
        fail(ErrorKind::UnknownMetaPattern, "MP_eq outside degeneration mode");
    if (program.put() != mr.put) fail(ErrorKind::InvalidArgument, "MR and program PUT differ");
    Observation obs;
    try {
        obs = mr.observe(program, ctx);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnknownMetaPattern) throw;
        return non_finite(e.what());
    } catch (const std::exception& e) {
        return non_finite(e.what());
    }
    return std::visit([&](const auto& o) { return judge(o, mr); }, obs);
}

AvpVerdict avp_verify(const Program& program, const MrInstance& mr, std::uint64_t seed) {
    return avp_verify(program, mr, MrContext{seed, seed, std::nullopt});
}

}  // namespace semmut
