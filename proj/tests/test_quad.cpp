#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "elliptic_lab/quad.hpp"

using namespace elliptic_lab;
using std::numbers::pi;

TEST_CASE("polynomials and smooth integrands")
{
    const Estimate cube = integrate([](double x) { return x * x * x; }, 0.0, 2.0);
    CHECK(cube.converged);
    CHECK(cube.value == doctest::Approx(4.0).epsilon(1e-14));

    const Estimate expo = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::abs(expo.value - (std::numbers::e - 1.0)) <= 1e-14);
}

TEST_CASE("endpoint singularities")
{
    // x^(-1/2) on (0, 1)
    const Estimate inv_sqrt = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(inv_sqrt.converged);
    CHECK(std::abs(inv_sqrt.value - 2.0) <= 1e-12);

    // log x on (0, 1)
    const Estimate log_int = integrate([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(std::abs(log_int.value + 1.0) <= 1e-12);

    // (1 - x)^(-3/4), using the gap to the upper end
    const Estimate gap = integrate(
        [](const Abscissa& a) { return std::pow(a.to_upper, -0.75); }, 0.0, 1.0);
    CHECK(gap.converged);
    CHECK(std::abs(gap.value - 4.0) <= 1e-11);
}

TEST_CASE("gap form resolves the upper endpoint better than the plain form")
{
    // \int_0^1 dx / sqrt(1 - x^2) = pi/2
    const Estimate gap = integrate(
        [](const Abscissa& a) { return 1.0 / std::sqrt(a.to_upper * (1.0 + a.x)); }, 0.0, 1.0);
    CHECK(gap.converged);
    CHECK(std::abs(gap.value - pi / 2) <= 1e-13);

    const Estimate plain = integrate(
        [](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); }, 0.0, 1.0);
    CHECK(std::abs(plain.value - pi / 2) <= plain.error_bound + 1e-15);
    CHECK(std::abs(gap.value - pi / 2) <= std::abs(plain.value - pi / 2) + 1e-15);
}

TEST_CASE("linearity and additivity")
{
    auto f = [](double x) { return std::sin(x) / std::sqrt(x); };
    auto g = [](double x) { return std::log(x) * std::cos(x); };
    const double a = 2.5, b = -0.75;

    for (double c : {-1.0, 2.0}) {
        const Estimate plain = integrate(f, 0.0, 2.0);
        const Estimate scaled = integrate([&](double x) { return c * f(x); }, 0.0, 2.0);
        CHECK(std::abs(scaled.value - c * plain.value) <= scaled.error_bound + std::abs(c) * plain.error_bound);
    }

    const double lhs = integrate([&](double x) { return a * f(x) + b * g(x); }, 0.0, 2.0).value;
    const double rhs = a * integrate(f, 0.0, 2.0).value + b * integrate(g, 0.0, 2.0).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12);

    const double whole = integrate(f, 0.0, 2.0).value;
    const double split = integrate(f, 0.0, 0.7).value + integrate(f, 0.7, 2.0).value;
    CHECK(std::abs(whole - split) <= 1e-12);
}

TEST_CASE("error bounds are conservative")
{
    struct Case
    {
        const char* name;
        Integrand f;
        double a, b, exact;
    };
    const std::vector<Case> cases = {
        {"x^2", [](double x) { return x * x; }, 0.0, 1.0, 1.0 / 3.0},
        {"exp", [](double x) { return std::exp(x); }, -1.0, 1.0, std::exp(1.0) - std::exp(-1.0)},
        {"cos", [](double x) { return std::cos(x); }, 0.0, pi / 2, 1.0},
        {"x^-1/2", [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, 4.0},
        {"log", [](double x) { return std::log(x); }, 0.0, 1.0, -1.0},
        {"x^-0.9", [](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, 10.0},
        {"1/(1+x^2)", [](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, pi / 4},
        {"sqrt(1-x^2)", [](double x) { return std::sqrt((1.0 - x) * (1.0 + x)); }, -1.0, 1.0, pi / 2},
        {"x log x", [](double x) { return x * std::log(x); }, 0.0, 1.0, -0.25},
        {"sin^2", [](double x) { return std::sin(x) * std::sin(x); }, 0.0, pi, pi / 2},
    };
    for (const Case& c : cases) {
        CAPTURE(c.name);
        const Estimate e = integrate(c.f, c.a, c.b);
        CHECK(e.converged);
        CHECK(std::abs(e.value - c.exact) <= e.error_bound + 4e-16 * std::abs(c.exact));
    }
}

TEST_CASE("adaptive Gauss-Kronrod rule")
{
    QuadratureSpec spec;
    spec.rule = Rule::adaptive_gauss;
    spec.max_levels = 40;
    const Estimate smooth = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0, spec);
    CHECK(smooth.converged);
    CHECK(std::abs(smooth.value - std::sqrt(pi) / 2 * std::erf(3.0)) <= 1e-13);

    const Estimate singular = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(std::abs(singular.value - 2.0) <= singular.error_bound + 1e-15);
}

TEST_CASE("triangular integration")
{
    // \int_0^X dx \int_0^x dy 1 = X^2/2
    const Estimate area = integrate_triangular([](double, double) { return 1.0; }, 3.0);
    CHECK(area.converged);
    CHECK(std::abs(area.value - 4.5) <= 1e-12);

    // \int_0^1 dx \int_0^x dy x y = 1/8
    const Estimate moment = integrate_triangular([](double x, double y) { return x * y; }, 1.0);
    CHECK(std::abs(moment.value - 0.125) <= 1e-13);
}

TEST_CASE("invalid input")
{
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, INFINITY), std::invalid_argument);

    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.max_levels = 0;
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, bad), std::invalid_argument);

    CHECK_THROWS_AS(integrate_triangular([](double, double) { return 1.0; }, 0.0), std::invalid_argument);
}

TEST_CASE("non-finite integrand values raise EvaluationError")
{
    try {
        integrate([](double x) { return x > 0.5 ? NAN : 1.0; }, 0.0, 1.0);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.abscissa() > 0.5);
        CHECK(e.abscissa() < 1.0);
    }
}

TEST_CASE("an unreachable tolerance is reported as non-converged")
{
    QuadratureSpec spec;
    spec.max_levels = 2;
    spec.abs_tol = spec.rel_tol = 1e-15;
    const Estimate e = integrate([](double x) { return std::pow(x, -0.99); }, 0.0, 1.0, spec);
    CHECK_FALSE(e.converged);
}
