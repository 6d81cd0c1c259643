// test_specfun.cpp — sine integral and adaptive quadrature
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decobec/errors.hpp"
#include "decobec/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace decobec;

namespace {
constexpr double pi = std::numbers::pi;
}

// Reference values computed with 50-digit arbitrary-precision arithmetic
// and frozen before the implementation was written.
TEST_CASE("sine integral: frozen high-precision references") {
    struct Ref {
        double z, si;
    };
    const Ref refs[] = {
        {0.5, 0.49310741804306668916},  {1.0, 0.94608307036718301494},
        {2.0, 1.6054129768026948486},   {4.0, 1.7582031389490530581},
        {5.0, 1.5499312449446741373},   {10.0, 1.6583475942188740493},
        {100.0, 1.5622254668890562934}, {pi, 1.8519370519824661704},
    };
    for (const Ref& ref : refs)
        CHECK(sine_integral(ref.z) == doctest::Approx(ref.si).epsilon(1e-13));
}

TEST_CASE("sine integral: oddness, origin, asymptote") {
    CHECK(sine_integral(0.0) == 0.0);
    for (double z : {0.3, 2.0, 7.0, 40.0, 1234.5})
        CHECK(sine_integral(-z) == -sine_integral(z));
    // Si(x) − π/2 ~ −cos(x)/x: bounded by ~1.1/x for large x
    CHECK(std::abs(sine_integral(1e4) - pi / 2) < 2e-4);
    CHECK(std::abs(sine_integral(316.0) - pi / 2) < 4e-3);
}

TEST_CASE("sine integral: agrees with direct quadrature of sin(t)/t") {
    for (double z : {0.5, 2.0, 5.0, 10.0, 25.0}) {
        auto integrand = [](double t) {
            return t == 0.0 ? 1.0 : std::sin(t) / t;
        };
        const QuadratureResult q = integrate_adaptive(integrand, 0.0, z, 1e-12);
        CHECK(sine_integral(z) == doctest::Approx(q.value).epsilon(1e-10));
        CHECK(q.evaluations > 0);
    }
}

TEST_CASE("sine integral: rejects non-finite arguments") {
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::quiet_NaN()),
                    InvalidArgumentError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::infinity()),
                    InvalidArgumentError);
}

TEST_CASE("integrate_adaptive: smooth closed forms") {
    auto sq = [](double x) { return x * x; };
    CHECK(integrate_adaptive(sq, 0.0, 1.0, 1e-12).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate_adaptive(sine, 0.0, pi, 1e-12).value ==
          doctest::Approx(2.0).epsilon(1e-12));

    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(integrate_adaptive(gauss, -6.0, 6.0, 1e-12).value ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
}

TEST_CASE("integrate_adaptive: linearity, and reversed bounds are rejected") {
    auto f = [](double x) { return std::cos(3.0 * x); };
    auto g = [](double x) { return std::exp(-x); };
    auto combo = [&](double x) { return 2.0 * f(x) - 0.5 * g(x); };
    const double lhs = integrate_adaptive(combo, 0.0, 2.0, 1e-12).value;
    const double rhs = 2.0 * integrate_adaptive(f, 0.0, 2.0, 1e-12).value -
                       0.5 * integrate_adaptive(g, 0.0, 2.0, 1e-12).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    CHECK_THROWS_AS(integrate_adaptive(f, 2.0, 0.0, 1e-12), InvalidArgumentError);
    CHECK_THROWS_AS(integrate_adaptive(f, 2.0, 2.0, 1e-12), InvalidArgumentError);
}

TEST_CASE("integrate_adaptive: oscillatory integrand with capped panels") {
    QuadratureOptions options;
    options.tol = 1e-11;
    options.max_initial_panel_width = 0.05;
    auto f = [](double x) { return std::sin(40.0 * x); };
    const QuadratureResult q = integrate_adaptive(f, 0.0, 3.0, options);
    const double exact = (1.0 - std::cos(120.0)) / 40.0;
    CHECK(q.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("integrate_adaptive: accuracy failure carries the best estimate") {
    QuadratureOptions options;
    options.tol = 1e-14;
    options.max_depth = 2;
    auto f = [](double x) { return std::sin(50.0 * x) / (1e-4 + x * x); };
    try {
        integrate_adaptive(f, 0.0, 10.0, options);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(std::isfinite(e.best_estimate));
    }
}

TEST_CASE("integrate_to_cutoff: convergent kernel") {
    auto kernel = [](double k) { return 1.0 / (1.0 + k * k); };
    std::vector<double> partials;
    const QuadratureResult q = integrate_to_cutoff(
        kernel, 0.0, {10.0, 100.0, 1000.0}, QuadratureOptions{}, &partials);
    CHECK_FALSE(q.diverged);
    CHECK(q.value == doctest::Approx(std::atan(1000.0)).epsilon(1e-9));
    REQUIRE(partials.size() == 3);
    CHECK(partials[0] == doctest::Approx(std::atan(10.0)).epsilon(1e-9));
}

TEST_CASE("integrate_to_cutoff: growing kernel flagged as divergent") {
    auto kernel = [](double k) { return k; };
    std::vector<double> partials;
    const QuadratureResult q = integrate_to_cutoff(
        kernel, 0.0, {100.0, 1000.0, 10000.0}, QuadratureOptions{}, &partials);
    CHECK(q.diverged);
    REQUIRE(partials.size() == 3);
    CHECK(partials[0] < partials[1]);
    CHECK(partials[1] < partials[2]);
}

TEST_CASE("integrate_to_cutoff: cutoffs must ascend past the lower bound") {
    auto kernel = [](double k) { return k; };
    CHECK_THROWS_AS(
        integrate_to_cutoff(kernel, 0.0, {10.0, 5.0, 20.0}, QuadratureOptions{}),
        InvalidArgumentError);
}

TEST_CASE("pairwise_sum: cascade matches naive summation on benign data") {
    std::vector<double> tenths(10, 0.1);
    CHECK(pairwise_sum(tenths) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pairwise_sum({}) == 0.0);
    CHECK(pairwise_sum({3.5}) == 3.5);

    std::vector<double> values;
    double naive = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double v = std::sin(0.37 * i) / i;
        values.push_back(v);
        naive += v;
    }
    CHECK(pairwise_sum(values) == doctest::Approx(naive).epsilon(1e-12));
}
