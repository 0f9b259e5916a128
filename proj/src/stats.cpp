#include "semmut/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "semmut/rng.hpp"
#include "semmut/types.hpp"

namespace semmut {

double normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / std::sqrt(2.0)); }
double normal_sf(double z) { return 0.5 * boost::math::erfc(z / std::sqrt(2.0)); }

double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(df / 2.0, x / 2.0);
}

std::vector<double> midranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = rank;
        i = j + 1;
    }
    return r;
}

double mean(std::span<const double> v) {
    if (v.empty()) fail(ErrorKind::EmptySample, "mean of empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::span<const double> v) {
    if (v.empty()) fail(ErrorKind::EmptySample, "median of empty sample");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    std::size_t n = s.size();
    return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

double population_sd(std::span<const double> v) {
    double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

double cliffs_delta(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) fail(ErrorKind::EmptySample, "cliffs_delta needs two nonempty samples");
    long long more = 0, less = 0;
    for (double x : a)
        for (double y : b) {
            more += x > y;
            less += x < y;
        }
    return static_cast<double>(more - less) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

bool rank_invariance_check(std::span<const double> a, std::span<const double> b,
                           const std::function<double(double)>& monotone_map) {
    std::vector<double> ma, mb;
    for (double x : a) ma.push_back(monotone_map(x));
    for (double x : b) mb.push_back(monotone_map(x));
    return cliffs_delta(ma, mb) == cliffs_delta(a, b);
}

namespace {

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void resample(std::span<const double> src, CounterRng& rng, std::vector<double>& out) {
    out.resize(src.size());
    for (double& x : out) x = src[rng.below(src.size())];
}

}  // namespace

ConfidenceInterval bootstrap_ci(std::span<const double> a, std::span<const double> b, int iterations,
                                std::uint64_t seed) {
    if (a.empty() || b.empty()) fail(ErrorKind::EmptySample, "bootstrap_ci needs two nonempty samples");
    if (iterations < 100) fail(ErrorKind::InvalidArgument, "bootstrap_ci needs >= 100 iterations");
    std::vector<double> deltas, ra, rb;
    deltas.reserve(static_cast<std::size_t>(iterations));
    for (int i = 0; i < iterations; ++i) {
        CounterRng rng(derive_seed({seed, 0xb0075ULL, static_cast<std::uint64_t>(i)}));
        resample(a, rng, ra);
        resample(b, rng, rb);
        deltas.push_back(cliffs_delta(ra, rb));
    }
    return {quantile(deltas, 0.025), quantile(deltas, 0.975)};
}

std::string_view to_string(EffectClass c) {
    switch (c) {
        case EffectClass::negligible: return "negligible";
        case EffectClass::small: return "small";
        case EffectClass::medium: return "medium";
        case EffectClass::large: return "large";
    }
    return "?";
}

EffectClass romano_classify(double delta) {
    double d = std::abs(delta);
    if (d >= 0.474) return EffectClass::large;
    if (d >= 0.330) return EffectClass::medium;
    if (d >= 0.147) return EffectClass::small;
    return EffectClass::negligible;
}

OddsRatios odds_ratios(std::span<const double> aligned, std::span<const double> cross) {
    if (aligned.empty() || cross.empty()) fail(ErrorKind::EmptySample, "odds_ratios needs two nonempty samples");
    auto nonzero = [](std::span<const double> v) {
        return static_cast<double>(std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; }));
    };
    double a = nonzero(aligned), c = nonzero(cross);
    double b = static_cast<double>(aligned.size()) - a, d = static_cast<double>(cross.size()) - c;
    OddsRatios r;
    r.nonzero_odds_ratio = ((a + 0.5) / (b + 0.5)) / ((c + 0.5) / (d + 0.5));
    double ma = median(aligned), mc = median(cross);
    if (mc == 0.0)
        r.median_ratio = ma > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    else
        r.median_ratio = ma / mc;
    return r;
}

SignTestResult sign_test(std::span<const double> deltas) {
    if (deltas.empty()) fail(ErrorKind::EmptySample, "sign_test needs at least one delta");
    SignTestResult r;
    r.total = static_cast<int>(deltas.size());
    r.positives = static_cast<int>(std::count_if(deltas.begin(), deltas.end(), [](double x) { return x > 0.0; }));
    double p = 0.0;
    for (int k = r.positives; k <= r.total; ++k)
        p += std::exp(std::lgamma(r.total + 1.0) - std::lgamma(k + 1.0) - std::lgamma(r.total - k + 1.0) -
                      r.total * std::log(2.0));
    r.p_value = std::min(1.0, p);
    return r;
}

double coefficient_of_variation(std::span<const double> v) {
    double m = mean(v);
    if (std::abs(m) < 1e-15) fail(ErrorKind::ZeroMean, "coefficient of variation with zero mean");
    return population_sd(v) / std::abs(m);
}

FriedmanResult friedman(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) fail(ErrorKind::DegenerateMatrix, "friedman needs n >= 2 rows");
    const std::size_t k = rows.front().size();
    if (k < 2) fail(ErrorKind::DegenerateMatrix, "friedman needs k >= 2 columns");
    FriedmanResult r;
    r.rank_means.assign(k, 0.0);
    for (const auto& row : rows) {
        if (row.size() != k) fail(ErrorKind::LengthMismatch, "friedman rows differ in length");
        auto ranks = midranks(row);
        for (std::size_t j = 0; j < k; ++j) r.rank_means[j] += ranks[j];
    }
    const auto n = static_cast<double>(rows.size());
    const auto kd = static_cast<double>(k);
    double ss = 0.0;
    for (double& m : r.rank_means) {
        m /= n;
        ss += (m - (kd + 1.0) / 2.0) * (m - (kd + 1.0) / 2.0);
    }
    r.chi2 = 12.0 * n / (kd * (kd + 1.0)) * ss;
    r.kendalls_w = r.chi2 / (n * (kd - 1.0));
    r.p_value = chi_square_sf(r.chi2, kd - 1.0);
    return r;
}

std::vector<double> bonferroni(std::span<const double> pvals, int m) {
    if (m < 1) fail(ErrorKind::InvalidArgument, "bonferroni needs m >= 1");
    std::vector<double> out;
    for (double p : pvals) out.push_back(std::min(1.0, p * m));
    return out;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
    double ma = mean(a), mb = mean(b), sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    long long conc = 0, disc = 0, tx = 0, ty = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) ++tx;
            else if (dy == 0.0) ++ty;
            else if ((dx > 0) == (dy > 0)) ++conc;
            else ++disc;
        }
    double denom = std::sqrt(static_cast<double>(conc + disc + tx) * static_cast<double>(conc + disc + ty));
    return denom == 0.0 ? 0.0 : static_cast<double>(conc - disc) / denom;
}

}  // namespace

CorrelationResult spearman_kendall(std::span<const double> x, std::span<const double> y, std::uint64_t seed,
                                   int permutations) {
    if (x.size() != y.size()) fail(ErrorKind::LengthMismatch, "spearman_kendall needs equal lengths");
    if (x.size() < 3) fail(ErrorKind::InvalidArgument, "spearman_kendall needs n >= 3");
    auto rx = midranks(x), ry = midranks(y);
    CorrelationResult r;
    r.rho = pearson(rx, ry);
    r.tau = kendall_tau_b(x, y);
    const double eps = 1e-12;
    long long hit_rho = 0, hit_tau = 0, total = 0;
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> py(y.size()), pry(y.size());
    auto score = [&] {
        for (std::size_t i = 0; i < perm.size(); ++i) {
            py[i] = y[perm[i]];
            pry[i] = ry[perm[i]];
        }
        hit_rho += std::abs(pearson(rx, pry)) >= std::abs(r.rho) - eps;
        hit_tau += std::abs(kendall_tau_b(x, py)) >= std::abs(r.tau) - eps;
        ++total;
    };
    if (x.size() <= 8) {
        do score();
        while (std::next_permutation(perm.begin(), perm.end()));
        r.p_rho = static_cast<double>(hit_rho) / static_cast<double>(total);
        r.p_tau = static_cast<double>(hit_tau) / static_cast<double>(total);
    } else {
        for (int s = 0; s < permutations; ++s) {
            CounterRng rng(derive_seed({seed, 0x9e4ULL, static_cast<std::uint64_t>(s)}));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            score();
        }
        r.p_rho = (static_cast<double>(hit_rho) + 1.0) / (static_cast<double>(total) + 1.0);
        r.p_tau = (static_cast<double>(hit_tau) + 1.0) / (static_cast<double>(total) + 1.0);
    }
    return r;
}

std::vector<bool> bh_fdr(std::span<const double> pvals, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::InvalidArgument, "bh_fdr alpha must lie in (0, 1)");
    const std::size_t m = pvals.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });
    std::size_t cut = 0;
    for (std::size_t r = 1; r <= m; ++r)
        if (pvals[idx[r - 1]] <= alpha * static_cast<double>(r) / static_cast<double>(m)) cut = r;
    std::vector<bool> reject(m, false);
    for (std::size_t r = 0; r < cut; ++r) reject[idx[r]] = true;
    return reject;
}

std::string_view to_string(PowerMode m) { return m == PowerMode::plugin ? "plugin" : "stipulated"; }

PowerReport power_plugin(std::span<const double> aligned, std::span<const double> cross,
                         std::span<const double> thresholds, int n_sim, std::uint64_t seed) {
    if (aligned.empty() || cross.empty()) fail(ErrorKind::EmptySample, "power needs two nonempty samples");
    if (n_sim < 100) fail(ErrorKind::InvalidArgument, "power needs n_sim >= 100");
    std::vector<double> deltas, ra, rb;
    for (int s = 0; s < n_sim; ++s) {
        CounterRng rng(derive_seed({seed, 0x9107ULL, static_cast<std::uint64_t>(s)}));
        resample(aligned, rng, ra);
        resample(cross, rng, rb);
        deltas.push_back(cliffs_delta(ra, rb));
    }
    PowerReport r;
    r.mode = PowerMode::plugin;
    r.n_sim = n_sim;
    r.seed = seed;
    for (double t : thresholds) {
        auto hits = std::count_if(deltas.begin(), deltas.end(), [t](double d) { return d > t; });
        r.powers.emplace_back(t, static_cast<double>(hits) / n_sim);
    }
    return r;
}

namespace {

constexpr double kStipulatedShift = 0.001;

struct MixtureDraw {
    std::vector<std::size_t> aligned_idx;
    std::vector<double> aligned_u;
    std::vector<double> cross;
};

std::vector<MixtureDraw> mixture_draws(std::span<const double> aligned, std::span<const double> cross, int n_sim,
                                       std::uint64_t seed) {
    std::vector<MixtureDraw> draws(static_cast<std::size_t>(n_sim));
    for (int s = 0; s < n_sim; ++s) {
        CounterRng rng(derive_seed({seed, 0x571bULL, static_cast<std::uint64_t>(s)}));
        auto& d = draws[static_cast<std::size_t>(s)];
        for (std::size_t i = 0; i < aligned.size(); ++i) {
            d.aligned_idx.push_back(rng.below(aligned.size()));
            d.aligned_u.push_back(rng.uniform());
        }
        resample(cross, rng, d.cross);
    }
    return draws;
}

std::vector<double> realise(const MixtureDraw& d, std::span<const double> aligned, double w) {
    std::vector<double> a;
    for (std::size_t i = 0; i < d.aligned_idx.size(); ++i)
        a.push_back(aligned[d.aligned_idx[i]] + (d.aligned_u[i] < w ? kStipulatedShift : 0.0));
    return a;
}

double expected_delta(const std::vector<MixtureDraw>& draws, std::span<const double> aligned, double w) {
    double total = 0.0;
    for (const auto& d : draws) total += cliffs_delta(realise(d, aligned, w), d.cross);
    return total / static_cast<double>(draws.size());
}

}  // namespace

PowerReport power_stipulated(std::span<const double> aligned, std::span<const double> cross, double target_delta,
                             int n_sim, std::uint64_t seed, int inner_bootstrap) {
    if (aligned.empty() || cross.empty()) fail(ErrorKind::EmptySample, "power needs two nonempty samples");
    if (n_sim < 100) fail(ErrorKind::InvalidArgument, "power needs n_sim >= 100");
    const double observed = cliffs_delta(aligned, cross);
    if (!(target_delta > observed && target_delta < 1.0))
        fail(ErrorKind::UnreachableTarget, "target delta must lie strictly between the observed delta and 1");

    auto draws = mixture_draws(aligned, cross, n_sim, seed);
    double lo = 0.0, hi = 1.0;
    double e_lo = expected_delta(draws, aligned, lo), e_hi = expected_delta(draws, aligned, hi);
    if (e_hi < target_delta - 0.005)
        fail(ErrorKind::UnreachableTarget, "mixture cannot reach the target delta");
    double w = e_lo >= target_delta ? 0.0 : 1.0;
    double e = e_lo >= target_delta ? e_lo : e_hi;
    if (std::abs(e - target_delta) > 0.001) {
        for (int it = 0; it < 60; ++it) {
            w = 0.5 * (lo + hi);
            e = expected_delta(draws, aligned, w);
            if (std::abs(e - target_delta) <= 0.001) break;
            (e < target_delta ? lo : hi) = w;
        }
    }
    if (std::abs(e - target_delta) > 0.005) fail(ErrorKind::UnreachableTarget, "bisection did not reach the target");

    int point_hits = 0, ci_hits = 0;
    for (int s = 0; s < n_sim; ++s) {
        const auto& d = draws[static_cast<std::size_t>(s)];
        auto a = realise(d, aligned, w);
        if (cliffs_delta(a, d.cross) >= target_delta) ++point_hits;
        std::vector<double> inner, ra, rb;
        for (int b = 0; b < inner_bootstrap; ++b) {
            CounterRng rng(derive_seed({seed, 0xc1ULL, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(b)}));
            resample(a, rng, ra);
            resample(d.cross, rng, rb);
            inner.push_back(cliffs_delta(ra, rb));
        }
        if (quantile(inner, 0.025) > 0.0) ++ci_hits;
    }
    PowerReport r;
    r.mode = PowerMode::stipulated;
    r.n_sim = n_sim;
    r.seed = seed;
    r.target = target_delta;
    r.mixture_weight = w;
    r.realized_expected_delta = e;
    r.point_power = static_cast<double>(point_hits) / n_sim;
    r.ci_power = static_cast<double>(ci_hits) / n_sim;
    r.powers.emplace_back(target_delta, *r.point_power);
    return r;
}

std::string_view to_string(HypothesisVerdict v) {
    switch (v) {
        case HypothesisVerdict::met: return "met";
        case HypothesisVerdict::not_met: return "not_met";
        case HypothesisVerdict::partial: return "partial";
    }
    return "?";
}

HypothesisVerdicts evaluate_hypotheses(const HypothesisInputs& in) {
    if (in.nonequivalent.empty() || in.aligned_sms.empty() || in.cross_sms.empty() || in.class_deltas.empty())
        fail(ErrorKind::IncompleteInput, "hypothesis evaluation needs campaign, slice and class inputs");
    HypothesisVerdicts v;
    for (const auto& row : in.nonequivalent) {
        int ops = static_cast<int>(std::count_if(row.begin(), row.end(), [](int n) { return n >= 5; }));
        if (ops >= 4) ++v.h1_puts_meeting;
    }
    v.h1 = v.h1_puts_meeting >= 9 ? HypothesisVerdict::met : HypothesisVerdict::not_met;

    v.h2_odds_ratio = odds_ratios(in.aligned_sms, in.cross_sms).nonzero_odds_ratio;
    v.h2_delta = cliffs_delta(in.aligned_sms, in.cross_sms);
    v.h2 = v.h2_odds_ratio >= 3.0 && v.h2_delta >= 0.474 ? HypothesisVerdict::met : HypothesisVerdict::not_met;

    auto sign = sign_test(in.class_deltas);
    v.h3_positives = sign.positives;
    v.h3_total = sign.total;
    try {
        v.h3_cv = coefficient_of_variation(in.class_deltas);
    } catch (const Error&) {
        v.h3_cv.reset();
    }
    bool all_positive = sign.positives == sign.total;
    bool stable = v.h3_cv && *v.h3_cv < 0.5;
    if (all_positive && stable) v.h3 = HypothesisVerdict::met;
    else if (sign.positives >= sign.total - 1 && sign.positives > 0) v.h3 = HypothesisVerdict::partial;
    else v.h3 = HypothesisVerdict::not_met;

    if (in.suspect_shares.empty()) fail(ErrorKind::IncompleteInput, "no cell has defined LRCA shares");
    v.h4_mean_suspect_share = mean(in.suspect_shares);
    v.h4 = v.h4_mean_suspect_share <= 0.20 ? HypothesisVerdict::met : HypothesisVerdict::not_met;
    return v;
}

}  // namespace semmut
