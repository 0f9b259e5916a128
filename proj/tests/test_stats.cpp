#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "semmut/rng.hpp"
#include "semmut/stats.hpp"
#include "semmut/types.hpp"

using namespace semmut;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no semmut::Error thrown");
    return ErrorKind::InvalidArgument;
}

// Delta through the Mann-Whitney U statistic on pooled midranks.
double delta_via_u(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> all(a);
    all.insert(all.end(), b.begin(), b.end());
    auto r = midranks(all);
    double ra = std::accumulate(r.begin(), r.begin() + static_cast<long>(a.size()), 0.0);
    double m = static_cast<double>(a.size()), n = static_cast<double>(b.size());
    double u = ra - m * (m + 1) / 2;
    return 2 * u / (m * n) - 1;
}

std::vector<double> draw(CounterRng& rng, std::size_t n, double zero_share) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform() < zero_share ? 0.0 : std::round(rng.uniform() * 20) / 20;
    return v;
}

double spearman_no_ties(const std::vector<double>& x, const std::vector<double>& y) {
    auto rx = midranks(x), ry = midranks(y);
    double d2 = 0, n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    return 1 - 6 * d2 / (n * (n * n - 1));
}

double kendall_no_ties(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0, n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) s += ((x[i] - x[j]) * (y[i] - y[j]) > 0) ? 1 : -1;
    return s / (n * (n - 1) / 2);
}

}  // namespace

TEST_CASE("Cliff's delta examples") {
    std::vector<double> ones(5, 1.0), zeros(5, 0.0);
    CHECK(cliffs_delta(ones, zeros) == 1.0);
    CHECK(cliffs_delta(zeros, ones) == -1.0);
    CHECK(cliffs_delta(ones, ones) == 0.0);
    CHECK(cliffs_delta(std::vector<double>{1, 2, 3}, std::vector<double>{2}) == 0.0);
    CHECK(cliffs_delta(std::vector<double>{0.5, 0.5}, std::vector<double>{0.0, 0.5, 1.0}) == 0.0);
    CHECK(kind_of([&] { cliffs_delta(std::vector<double>{}, ones); }) == ErrorKind::EmptySample);
}

TEST_CASE("Cliff's delta agrees with the Mann-Whitney form") {
    CounterRng rng(31);
    for (int t = 0; t < 200; ++t) {
        auto a = draw(rng, 1 + rng.below(30), 0.4);
        auto b = draw(rng, 1 + rng.below(60), 0.7);
        double d = cliffs_delta(a, b);
        CHECK(d == doctest::Approx(delta_via_u(a, b)).epsilon(1e-12));
        CHECK(d == doctest::Approx(-cliffs_delta(b, a)).epsilon(1e-15));
        CHECK(std::abs(d) <= 1.0);
    }
}

TEST_CASE("Cliff's delta is invariant under strictly increasing maps") {
    CounterRng rng(8);
    std::vector<double> a(12), b(48);
    for (double& x : a) x = rng.uniform(0.01, 0.99);
    for (double& x : b) x = rng.uniform() < 0.5 ? 0.01 : rng.uniform(0.01, 0.99);
    CHECK(rank_invariance_check(a, b, [](double x) { return std::log(x / (1 - x)); }));
    CHECK(rank_invariance_check(a, b, [](double x) { return 2 * x + 3; }));
    for (int t = 0; t < 100; ++t) {
        double p = rng.uniform(0.1, 5), q = rng.uniform(0, 5), c = rng.uniform(-3, 3);
        CHECK(rank_invariance_check(a, b, [=](double x) { return p * x + q * x * x * x + c; }));
    }
    // A non-monotone map is not expected to preserve delta.
    CHECK_FALSE(rank_invariance_check(a, b, [](double x) { return -x; }));
}

TEST_CASE("bootstrap confidence interval") {
    std::vector<double> a{0.9, 0.8, 0.7, 1.0, 0.6, 0.95}, b{0.1, 0.0, 0.3, 0.0, 0.7, 0.2, 0.0};
    auto x = bootstrap_ci(a, b, 2000, 4);
    auto y = bootstrap_ci(a, b, 2000, 4);
    CHECK(x.low == y.low);
    CHECK(x.high == y.high);
    CHECK(x.low <= cliffs_delta(a, b));
    CHECK(x.high >= cliffs_delta(a, b) - 0.05);
    CHECK(x.low >= -1.0);
    CHECK(x.high <= 1.0);
    std::vector<double> ones(6, 1.0), zeros(6, 0.0);
    auto d = bootstrap_ci(ones, zeros, 500, 1);
    CHECK(d.low == 1.0);
    CHECK(d.high == 1.0);
    CHECK(kind_of([&] { bootstrap_ci(a, b, 10, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Romano thresholds") {
    CHECK(romano_classify(0.0) == EffectClass::negligible);
    CHECK(romano_classify(0.146) == EffectClass::negligible);
    CHECK(romano_classify(0.147) == EffectClass::small);
    CHECK(romano_classify(-0.2) == EffectClass::small);
    CHECK(romano_classify(0.330) == EffectClass::medium);
    CHECK(romano_classify(0.4739) == EffectClass::medium);
    CHECK(romano_classify(0.474) == EffectClass::large);
    CHECK(romano_classify(-1.0) == EffectClass::large);
}

TEST_CASE("odds ratios") {
    std::vector<double> aligned(12, 0.0), cross(48, 0.0);
    for (int i = 0; i < 9; ++i) aligned[i] = 0.5;
    for (int i = 0; i < 6; ++i) cross[i] = 0.2;
    auto r = odds_ratios(aligned, cross);
    CHECK(r.nonzero_odds_ratio == doctest::Approx((9.5 / 3.5) / (6.5 / 42.5)).epsilon(1e-12));
    CHECK(r.nonzero_odds_ratio == doctest::Approx(17.75).epsilon(1e-3));
    CHECK(std::isinf(r.median_ratio));
    auto same = odds_ratios(cross, cross);
    CHECK(same.nonzero_odds_ratio == doctest::Approx(1.0));
    CHECK(std::isnan(same.median_ratio));
    std::vector<double> p{0.4, 0.6}, q{0.2, 0.2};
    CHECK(odds_ratios(p, q).median_ratio == doctest::Approx(2.5));
}

TEST_CASE("sign test") {
    std::vector<double> all{0.1, 0.2, 0.3, 0.4};
    auto r = sign_test(all);
    CHECK(r.positives == 4);
    CHECK(r.p_value == doctest::Approx(0.0625).epsilon(1e-14));
    std::vector<double> three{0.1, 0.2, -0.3, 0.4};
    CHECK(sign_test(three).p_value == doctest::Approx(0.3125).epsilon(1e-14));
    std::vector<double> none{-0.1, 0.0, -0.3, -0.4};
    CHECK(sign_test(none).positives == 0);
    CHECK(sign_test(none).p_value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coefficient of variation") {
    std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(coefficient_of_variation(v) == doctest::Approx(2.0 / 5.0));
    std::vector<double> z{-1, 1};
    CHECK(kind_of([&] { coefficient_of_variation(z); }) == ErrorKind::ZeroMean);
}

TEST_CASE("Friedman") {
    SUBCASE("identical rows carry no signal") {
        std::vector<std::vector<double>> rows(6, std::vector<double>(5, 0.3));
        auto r = friedman(rows);
        CHECK(r.chi2 == 0.0);
        CHECK(r.kendalls_w == 0.0);
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("perfect concordance") {
        std::vector<std::vector<double>> rows(12, {0.1, 0.2, 0.3, 0.4, 0.5});
        auto r = friedman(rows);
        CHECK(r.chi2 == doctest::Approx(48.0).epsilon(1e-12));
        CHECK(r.kendalls_w == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.p_value < 1e-8);
        CHECK(r.rank_means == std::vector<double>{1, 2, 3, 4, 5});
    }
    SUBCASE("hand fixture") {
        auto r = friedman({{1, 2, 3}, {1, 3, 2}, {1, 2, 3}});
        CHECK(r.chi2 == doctest::Approx(14.0 / 3).epsilon(1e-12));
        CHECK(r.kendalls_w == doctest::Approx(7.0 / 9).epsilon(1e-12));
        CHECK(r.p_value == doctest::Approx(std::exp(-7.0 / 3)).epsilon(1e-10));
    }
    SUBCASE("W and chi-square are tied by n(k-1)") {
        CounterRng rng(12);
        for (int t = 0; t < 50; ++t) {
            std::size_t n = 2 + rng.below(12), k = 2 + rng.below(5);
            std::vector<std::vector<double>> rows(n, std::vector<double>(k));
            for (auto& row : rows)
                for (double& x : row) x = std::round(rng.uniform() * 4) / 4;
            auto r = friedman(rows);
            CHECK(r.chi2 == doctest::Approx(r.kendalls_w * n * (k - 1)).epsilon(1e-12));
            CHECK(r.kendalls_w >= 0.0);
            CHECK(r.kendalls_w <= 1.0 + 1e-12);
        }
    }
    CHECK(kind_of([] { friedman({{1, 2}}); }) == ErrorKind::DegenerateMatrix);
    CHECK(kind_of([] { friedman({{1, 2}, {1, 2, 3}}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("multiple-comparison corrections") {
    std::vector<double> p{0.029};
    CHECK(bonferroni(p, 4)[0] == doctest::Approx(0.116));
    std::vector<double> big{0.4};
    CHECK(bonferroni(big, 4)[0] == 1.0);

    std::vector<double> ps{0.01, 0.02, 0.04, 0.9};
    // Step-up thresholds 0.0125, 0.025, 0.0375, 0.05.
    auto bh = bh_fdr(ps, 0.05);
    CHECK(bh == std::vector<bool>{true, true, false, false});
    std::vector<double> ps2{0.01, 0.02, 0.035, 0.9};
    CHECK(bh_fdr(ps2, 0.05) == std::vector<bool>{true, true, true, false});
    auto bonf = bonferroni(ps, 4);
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (bonf[i] <= 0.05) CHECK(bh[i]);

    CounterRng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> q(1 + rng.below(15));
        for (double& x : q) x = std::pow(rng.uniform(), 3);
        auto r = bh_fdr(q, 0.05);
        auto b = bonferroni(q, static_cast<int>(q.size()));
        for (std::size_t i = 0; i < q.size(); ++i)
            if (b[i] <= 0.05) CHECK(r[i]);
    }
}

TEST_CASE("rank correlations") {
    std::vector<double> x{1, 2, 3, 4, 5}, y{0.1, 0.4, 0.5, 0.9, 1.2};
    auto r = spearman_kendall(x, y);
    CHECK(r.rho == doctest::Approx(1.0));
    CHECK(r.tau == doctest::Approx(1.0));
    CHECK(r.p_rho == doctest::Approx(2.0 / 120));
    CHECK(r.p_tau == doctest::Approx(2.0 / 120));

    CounterRng rng(17);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> a(12), b(12);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = rng.uniform();
            b[i] = a[i] * rng.uniform(-1, 2) + rng.uniform();
        }
        auto c = spearman_kendall(a, b, 5, 500);
        CHECK(c.rho == doctest::Approx(spearman_no_ties(a, b)).epsilon(1e-12));
        CHECK(c.tau == doctest::Approx(kendall_no_ties(a, b)).epsilon(1e-12));
        CHECK(c.p_rho > 0.0);
        CHECK(c.p_rho <= 1.0);
    }
    CHECK(kind_of([&] { spearman_kendall(x, std::vector<double>{1, 2}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("plug-in power") {
    std::vector<double> a{0.9, 0.8, 0.0, 0.7, 1.0, 0.6, 0.0, 0.95}, b{0.1, 0.0, 0.3, 0.0, 0.7, 0.2, 0.0, 0.0, 0.5};
    auto p = power_plugin(a, b, kRomanoThresholds, 500, 42);
    REQUIRE(p.powers.size() == 4);
    for (std::size_t i = 1; i < p.powers.size(); ++i) CHECK(p.powers[i].second <= p.powers[i - 1].second);
    for (const auto& [t, pw] : p.powers) {
        CHECK(pw >= 0.0);
        CHECK(pw <= 1.0);
    }
    auto again = power_plugin(a, b, kRomanoThresholds, 500, 42);
    CHECK(again.powers == p.powers);

    std::vector<double> ones(6, 1.0), zeros(6, 0.0);
    auto sure = power_plugin(ones, zeros, kRomanoThresholds, 200, 1);
    for (const auto& [t, pw] : sure.powers) CHECK(pw == 1.0);
    auto never = power_plugin(zeros, zeros, kRomanoThresholds, 200, 1);
    for (const auto& [t, pw] : never.powers) CHECK(pw == 0.0);
}

TEST_CASE("stipulated power on a zero-heavy fixture") {
    // 12 aligned, 48 cross, 45 zeros in total.
    std::vector<double> aligned(12, 0.0), cross(48, 0.0);
    for (int i = 0; i < 6; ++i) aligned[i] = 0.5 + 0.05 * i;
    for (int i = 0; i < 9; ++i) cross[i] = 0.05 + 0.02 * i;
    REQUIRE(cliffs_delta(aligned, cross) < 0.4746);
    auto r = power_stipulated(aligned, cross, 0.4746, 300, 42, 100);
    CHECK(r.mode == PowerMode::stipulated);
    REQUIRE(r.realized_expected_delta.has_value());
    CHECK(std::abs(*r.realized_expected_delta - 0.4746) <= 0.005);
    CHECK(*r.mixture_weight > 0.0);
    CHECK(*r.mixture_weight < 1.0);
    CHECK(*r.point_power < *r.ci_power);

    CHECK(kind_of([&] { power_stipulated(aligned, cross, 0.2, 300, 42, 50); }) == ErrorKind::UnreachableTarget);
    CHECK(kind_of([&] { power_stipulated(aligned, cross, 1.0, 300, 42, 50); }) == ErrorKind::UnreachableTarget);
}

TEST_CASE("hypothesis verdicts") {
    HypothesisInputs in;
    in.nonequivalent.assign(12, std::vector<int>(5, 6));
    in.aligned_sms.assign(12, 0.9);
    in.cross_sms.assign(48, 0.0);
    in.class_deltas = {0.3, 0.35, 0.28, 0.32};
    in.suspect_shares = {0.0, 0.1, 0.2};
    auto v = evaluate_hypotheses(in);
    CHECK(v.h1 == HypothesisVerdict::met);
    CHECK(v.h1_puts_meeting == 12);
    CHECK(v.h2 == HypothesisVerdict::met);
    CHECK(v.h2_delta == 1.0);
    CHECK(v.h3 == HypothesisVerdict::met);
    CHECK(v.h3_positives == 4);
    CHECK(v.h4 == HypothesisVerdict::met);
    CHECK(v.h4_mean_suspect_share == doctest::Approx(0.1));

    for (int p = 0; p < 4; ++p) in.nonequivalent[p] = {6, 6, 6, 2, 2};
    in.cross_sms.assign(48, 0.9);
    in.class_deltas = {0.3, -0.1, 0.28, 0.32};
    in.suspect_shares = {0.5, 0.6};
    v = evaluate_hypotheses(in);
    CHECK(v.h1 == HypothesisVerdict::not_met);
    CHECK(v.h1_puts_meeting == 8);
    CHECK(v.h2 == HypothesisVerdict::not_met);
    CHECK(v.h3 == HypothesisVerdict::partial);
    CHECK(v.h4 == HypothesisVerdict::not_met);

    in.class_deltas = {-0.3, -0.1, 0.28, -0.32};
    CHECK(evaluate_hypotheses(in).h3 == HypothesisVerdict::not_met);
    // Positive everywhere but unstable across classes.
    in.class_deltas = {0.01, 0.5, 0.02, 0.9};
    CHECK(evaluate_hypotheses(in).h3 == HypothesisVerdict::partial);

    in.suspect_shares.clear();
    CHECK(kind_of([&] { evaluate_hypotheses(in); }) == ErrorKind::IncompleteInput);
    CHECK(kind_of([] { evaluate_hypotheses(HypothesisInputs{}); }) == ErrorKind::IncompleteInput);
}
