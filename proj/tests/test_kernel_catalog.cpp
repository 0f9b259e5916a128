#include <bit>
#include <cmath>

#include "doctest.h"
#include "semmut/kernel_catalog.hpp"
#include "semmut/kernels/class_a.hpp"
#include "semmut/kernels/class_b.hpp"
#include "semmut/rng.hpp"

using namespace semmut;

namespace {

template <class F>
ErrorKind error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no semmut::Error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("registry lists twelve PUTs in fixed order") {
    const auto& puts = list_puts();
    REQUIRE(puts.size() == 12);
    CHECK(puts.front().id == PutId::A1);
    for (std::size_t i = 0; i < puts.size(); ++i) CHECK(puts[i].id == kAllPuts[i]);
    int per_class[4] = {};
    for (const auto& d : puts) ++per_class[static_cast<int>(class_of(d.id))];
    for (int n : per_class) CHECK(n == 3);
    CHECK(per_class[static_cast<int>(PutClass::C)] == 3);
    CHECK(class_of(PutId::A2) == PutClass::A);
    CHECK(class_of(PutId::B3) == PutClass::B);
    CHECK(class_of(PutId::C1) == PutClass::C);
    CHECK(class_of(PutId::D3) == PutClass::D);
}

TEST_CASE("descriptors have bounded nonempty domains") {
    for (const auto& d : list_puts()) {
        CHECK(std::isfinite(d.input_domain.lo));
        CHECK(std::isfinite(d.input_domain.hi));
        CHECK(d.input_domain.lo < d.input_domain.hi);
        CHECK(d.ood_band_default > 0.0);
        CHECK(!d.name.empty());
    }
    for (PutId p : {PutId::A1, PutId::A3, PutId::B2, PutId::C3, PutId::D1})
        CHECK(descriptor(p).trajectory_capable);
    CHECK_FALSE(descriptor(PutId::B1).trajectory_capable);
}

TEST_CASE("unknown PUT ids are rejected") {
    CHECK(error_of([] { descriptor(static_cast<PutId>(12)); }) == ErrorKind::UnknownPut);
    CHECK(error_of([] { class_of(static_cast<PutId>(40)); }) == ErrorKind::UnknownPut);
    CHECK_FALSE(parse_put("E1").has_value());
    CHECK(parse_put("C2") == PutId::C2);
}

TEST_CASE("evaluation is deterministic and finite across the domain") {
    for (const auto& d : list_puts()) {
        CAPTURE(to_string(d.id));
        CounterRng rng(derive_seed({11, index_of(d.id)}));
        for (int i = 0; i < 6; ++i) {
            double x = rng.uniform(d.input_domain.lo, d.input_domain.hi);
            std::uint64_t s = rng.next_u64();
            double a = evaluate_put(d.id, x, s);
            double b = evaluate_put(d.id, x, s);
            CHECK(std::isfinite(a));
            CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
        }
        CHECK(std::isfinite(evaluate_put(d.id, d.input_domain.lo, 1)));
        CHECK(std::isfinite(evaluate_put(d.id, d.input_domain.hi, 1)));
    }
}

TEST_CASE("A1 midpoint golden value") {
    const double mid = descriptor(PutId::A1).input_domain.at(0.5);
    CHECK(evaluate_put(PutId::A1, mid, 7) == doctest::Approx(1.3896690404231968).epsilon(1e-12));
}

TEST_CASE("out-of-domain inputs raise DomainViolation") {
    const auto dom = descriptor(PutId::A3).input_domain;
    CHECK(error_of([&] { evaluate_put(PutId::A3, dom.hi + 0.5, 0); }) == ErrorKind::DomainViolation);
    CHECK(error_of([&] { evaluate_put(PutId::A3, dom.lo - 1e-9, 0); }) == ErrorKind::DomainViolation);
    CHECK(error_of([&] { evaluate_put(PutId::A3, std::nan(""), 0); }) == ErrorKind::DomainViolation);
    CHECK(error_of([&] { evaluate_trajectory(PutId::A1, 11.0, 0, 5); }) == ErrorKind::DomainViolation);
}

TEST_CASE("trajectories") {
    SUBCASE("A1 starts at the initial observable") {
        auto t = evaluate_trajectory(PutId::A1, 1.5, 3, 2);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == kernels::LorenzParams{}.z0);
        CHECK(t[1] == evaluate_put(PutId::A1, 1.5, 3));
    }
    SUBCASE("B2 golden chain") {
        auto t = evaluate_trajectory(PutId::B2, 0.0, 7, 100);
        REQUIRE(t.size() == 100);
        double sum = 0.0;
        for (double v : t) sum += v;
        CHECK(t[0] == doctest::Approx(-0.81539079843516837).epsilon(1e-12));
        CHECK(t[50] == doctest::Approx(-0.15829181267319856).epsilon(1e-12));
        CHECK(t[99] == doctest::Approx(-0.10035817290834581).epsilon(1e-12));
        CHECK(sum == doctest::Approx(-22.139386304074986).epsilon(1e-12));
        CHECK(t.back() == evaluate_put(PutId::B2, 0.0, 7));
    }
    SUBCASE("final element matches the scalar output") {
        for (PutId p : {PutId::A1, PutId::A3, PutId::B2, PutId::C3, PutId::D1}) {
            CAPTURE(to_string(p));
            double x = descriptor(p).input_domain.at(0.3);
            auto t = evaluate_trajectory(p, x, 5, 17);
            CHECK(t.size() == 17);
            CHECK(t.back() == doctest::Approx(evaluate_put(p, x, 5)).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        CHECK(error_of([] { evaluate_trajectory(PutId::B1, 1.0, 0, 10); }) == ErrorKind::NotTrajectoryCapable);
        CHECK(error_of([] { evaluate_trajectory(PutId::A1, 1.0, 0, 1); }) == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("A1 RK4 observed order is at least 3.5") {
    // Fixed-horizon error against a much finer reference, halving dt.
    const Program& p = original_program(PutId::A1);
    const double ref = p(Query{2.0, 0, 8, 0});
    std::vector<double> errs;
    for (int f = 0; f < 3; ++f) errs.push_back(std::abs(p(Query{2.0, 0, f, 0}) - ref));
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) CHECK(std::log2(errs[i] / errs[i + 1]) >= 3.5);
}

TEST_CASE("A2 LU reproduces a diagonal determinant") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
    const double diag[] = {0.5, -3.0, 2.25, 7.0, -0.125};
    double expected = 1.0;
    for (int i = 0; i < 5; ++i) {
        a(i, i) = diag[i];
        expected *= diag[i];
    }
    auto f = kernels::lu_factor(a);
    CHECK(std::abs(kernels::lu_determinant(f) - expected) <= 1e-12 * std::abs(expected));
}

TEST_CASE("B1 posterior mean is analytic") {
    kernels::BetaBinomialParams bp;
    for (double alpha : {0.5, 1.0, 2.5, 9.75}) {
        double want = (alpha + bp.successes) / (alpha + bp.beta + bp.trials);
        double got = evaluate_put(PutId::B1, alpha, 0);
        CHECK(std::abs(got - want) <= 1e-12 * want);
    }
}
