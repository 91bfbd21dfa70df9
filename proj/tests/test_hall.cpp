#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elliptic_lab/hall.hpp"

using namespace elliptic_lab;

namespace {

const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
const double sqrt2 = std::numbers::sqrt2;

// G with the inner root written sqrt(1 - k_p^2 (1 - y^2)), by plain nested quadrature.
double g_alternative_inner(double lambda_f, double lambda_p)
{
    const HallInput in(lambda_f, lambda_p);
    const double fk = in.f().k(), pk = in.p().k();
    const double k_p = (1.0 - pk) / (1.0 + pk), k_f = (1.0 - fk) / (1.0 + fk);
    QuadratureSpec inner_spec;
    inner_spec.abs_tol = inner_spec.rel_tol = 1e-13;
    const Estimate outer = integrate(
        [&](const Abscissa& a) {
            const double x = a.x;
            const double inner = integrate(
                [&](const Abscissa& b) {
                    const double y = b.x;
                    const double one_minus_y = a.to_upper + b.to_upper;
                    const double one_minus_y2 = one_minus_y * (1.0 + y);
                    return 1.0 / (std::sqrt(1.0 - k_p * k_p * one_minus_y2) * std::sqrt(one_minus_y2));
                },
                0.0, x, inner_spec).value;
            const double one_minus_x2 = a.to_upper * (1.0 + x);
            return inner / (std::sqrt(one_minus_x2) * std::sqrt(1.0 - (1.0 - k_f * k_f) * one_minus_x2));
        },
        0.0, 1.0);
    const double K_f = complete_K(Modulus(k_f));
    const double Kc_p = complete_K_comp(Modulus(k_p));
    return outer.value / (Kc_p * K_f) / std::sqrt(lambda_f * lambda_p);
}

} // namespace

TEST_CASE("ratios recover the self-complementary modulus")
{
    const HallInput in(2.0, 0.5);
    CHECK(std::abs(in.f().k() - inv_sqrt2) <= 1e-12);
    CHECK(std::abs(in.p().k() - inv_sqrt2) <= 1e-12);
    CHECK(lambda_p_ratio(Modulus(inv_sqrt2)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("inversion residuals")
{
    for (double lf : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (double lp : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const HallInput in(lf, lp);
            CHECK(std::abs(lambda_ratio(in.f()) - lf) <= 1e-10 * lf);
            CHECK(std::abs(lambda_p_ratio(in.p()) - lp) <= 1e-10 * lp);
        }
    }
}

TEST_CASE("substitution is an exact involution")
{
    const HallInput in(1.5, 0.8);
    const HallInput twice = in.substituted().substituted();
    CHECK(twice.lambda_f() == in.lambda_f());
    CHECK(twice.lambda_p() == in.lambda_p());
    CHECK(twice.f().k() == in.f().k());
    CHECK(twice.p().k() == in.p().k());
    CHECK(in.substituted().lambda_f() == doctest::Approx(2.0 / 1.5).epsilon(1e-16));
    CHECK(HallInput(sqrt2, sqrt2).is_fixed_point());
}

TEST_CASE("golden values")
{
    // Reference values from a 30-digit evaluation of the same double integral.
    const HallResult mid = hall_g_direct(Modulus(inv_sqrt2), Modulus(inv_sqrt2));
    CHECK(mid.converged);
    CHECK(std::abs(mid.g - 0.3363765153396124) <= 1e-12);

    const HallResult golden = hall_g(HallInput(1.5, 0.8));
    CHECK(golden.converged);
    CHECK(std::isfinite(golden.g));
    CHECK(std::abs(golden.g - 0.4639210995123023) <= 1e-11);

    CHECK(std::abs(hall_g(HallInput(3.0, 0.8)).normalized - 0.36031878467083426) <= 1e-11);
    CHECK(std::abs(hall_g(HallInput(1.5, 1.5)).normalized - 0.47012318730897974) <= 1e-11);
    CHECK(std::abs(hall_g(HallInput(0.3, 0.3)).normalized - 0.14998622726121) <= 1e-11);
}

TEST_CASE("G lies in (0, 1)")
{
    for (double lf : {0.3, 0.8, 1.5, 3.0}) {
        for (double lp : {0.3, 0.8, 1.5, 3.0}) {
            const HallResult r = hall_g(HallInput(lf, lp));
            CHECK(r.converged);
            CHECK(r.g > 0.0);
            CHECK(r.g < 1.0);
            CHECK(r.normalized > 0.0);
        }
    }
}

TEST_CASE("device symmetry")
{
    const InvarianceReport fixed = verify_device_symmetry(HallInput(sqrt2, sqrt2));
    CHECK(fixed.abs_diff == 0.0);
    CHECK(fixed.pass);

    CHECK(verify_device_symmetry(HallInput(1.5, 0.8), 1e-8).pass);
    CHECK(verify_device_symmetry(HallInput(0.3, 3.0), 1e-8).pass);
}

TEST_CASE("the alternative inner root is not symmetric")
{
    // Guards the choice of inner root: the other reading breaks the symmetry by far more than quadrature error.
    const double here = g_alternative_inner(1.5, 0.8);
    const double there = g_alternative_inner(2.0 / 1.5, 2.0 / 0.8);
    CHECK(std::abs(here - there) > 1e-4 * here);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(HallInput(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(HallInput(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(hall_g_direct(Modulus(0.0), Modulus(0.5)), std::domain_error);
    CHECK_THROWS_AS(hall_g_direct(Modulus(0.5), Modulus(1.0)), std::domain_error);
}
