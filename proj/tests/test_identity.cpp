#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "elliptic_lab/elliptic.hpp"
#include "elliptic_lab/identity.hpp"

using namespace elliptic_lab;
using std::numbers::pi;

namespace {

// Values frozen from a 30-digit reference evaluation of the defining integral.
constexpr double a_half_half = 4.30102583228952964;
constexpr double a_06_03 = 4.3710795469107516;
constexpr double a_09_01 = 4.63337146008094;

const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

// Brute-force 2D Simpson over the triangle, by the substitution y = x s.
double simpson_oracle(double p, double q, int n)
{
    auto weight = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    const double hx = pi / n, hs = 1.0 / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = i * hx;
        const double outer = 1.0 / std::sqrt(1.0 - p * std::cos(x));
        double inner = 0.0;
        for (int j = 0; j <= n; ++j)
            inner += weight(j) / std::sqrt(1.0 + q * std::cos(x * j * hs));
        sum += weight(i) * outer * x * inner * hs / 3.0;
    }
    return sum * hx / 3.0;
}

} // namespace

TEST_CASE("parameter pairs")
{
    const ParamPair pair(0.6, 0.3);
    CHECK(pair.p_comp() == doctest::Approx(0.8).epsilon(1e-16));
    CHECK(pair.q_comp() == doctest::Approx(std::sqrt(0.91)).epsilon(1e-16));

    for (double p : {0.1, 0.37, 0.6, 0.99}) {
        const ParamPair x(p, 1.0 - p);
        const ParamPair twice = x.complement().complement();
        CHECK(twice.p() == x.p());
        CHECK(twice.q() == x.q());
        CHECK(twice.p_comp() == x.p_comp());
    }
    CHECK(ParamPair(inv_sqrt2, inv_sqrt2).is_fixed_point());
    CHECK_FALSE(pair.is_fixed_point());

    CHECK_THROWS_AS(ParamPair(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(ParamPair(0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(ParamPair(1.2, 0.5), std::domain_error);
}

TEST_CASE("lemma parameters")
{
    const LemmaParams lp = LemmaParams::from_pair(ParamPair(0.5, 0.5));
    CHECK(lp.alpha == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(lp.beta == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(LemmaParams(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(LemmaParams(0.5, 0.0), std::domain_error);
}

TEST_CASE("direct route against the brute-force oracle")
{
    const double oracle = simpson_oracle(0.5, 0.5, 400);
    CHECK(std::abs(oracle - a_half_half) <= 1e-6);
    const Estimate direct = a_direct(ParamPair(0.5, 0.5));
    CHECK(direct.converged);
    CHECK(std::abs(direct.value - oracle) <= 1e-6);
    CHECK(std::abs(direct.value - a_half_half) <= 1e-12 * a_half_half);
}

TEST_CASE("every route reproduces the reference values")
{
    struct Ref
    {
        double p, q, a;
    };
    for (const Ref ref : {Ref{0.5, 0.5, a_half_half}, Ref{0.6, 0.3, a_06_03}, Ref{0.9, 0.1, a_09_01}}) {
        for (Route route : all_routes) {
            CAPTURE(ref.p);
            CAPTURE(ref.q);
            CAPTURE(std::string(route_name(route)));
            const Estimate e = a_route(route, ParamPair(ref.p, ref.q));
            CHECK(e.converged);
            CHECK(std::abs(e.value - ref.a) <= 1e-12 * ref.a);
        }
    }
}

TEST_CASE("cross-route checks")
{
    const ParamPair a(0.3, 0.8);
    CHECK(std::abs(a_lemma_reduced(a).value - a_theta_form(a).value) <= 1e-9);
    const ParamPair b(0.7, 0.2);
    CHECK(std::abs(a_final_form(b).value - a_lemma_reduced(b).value) <= 1e-9);

    const auto reports = evaluate_routes(ParamPair(0.5, 0.5));
    CHECK(reports.size() == 4);
    CHECK(route_spread(reports) < 1e-8);
}

TEST_CASE("degenerate corner")
{
    const double half_pi_sq = pi * pi / 2;
    CHECK(std::abs(a_direct(ParamPair(1e-6, 1e-6)).value - half_pi_sq) <= 1e-5);
    CHECK(std::abs(a_theta_form(ParamPair(1e-6, 1e-6)).value - half_pi_sq) <= 1e-5);
}

TEST_CASE("final form is manifestly symmetric")
{
    const ParamPair pair(0.6, 0.3);
    const double here = a_final_form(pair).value;
    const double there = a_final_form(pair.complement()).value;
    CHECK(std::abs(here - there) <= 1e-14 * here);
}

TEST_CASE("invariance under the complement map")
{
    const InvarianceReport r = verify_invariance(ParamPair(0.6, 0.3), 1e-9);
    CHECK(r.pass);
    CHECK(r.converged);
    CHECK(std::abs(r.a_pq - a_06_03) <= 1e-12 * a_06_03);

    const InvarianceReport fixed = verify_invariance(ParamPair(inv_sqrt2, inv_sqrt2), 1e-9);
    CHECK(fixed.abs_diff == 0.0);
    CHECK(fixed.pass);

    QuadratureSpec loose;
    loose.abs_tol = loose.rel_tol = 1e-9;
    CHECK(verify_invariance(ParamPair(0.99, 0.99), 1e-7, loose).pass);

    CHECK_THROWS_AS(verify_invariance(ParamPair(0.5, 0.5), 0.0), std::invalid_argument);
}

TEST_CASE("positive and below the degenerate-corner value")
{
    // The integrand is positive, so A > 0; on this grid A stays below pi^2/2.
    for (double p : {0.1, 0.5, 0.9}) {
        for (double q : {0.1, 0.5, 0.9}) {
            CAPTURE(p);
            CAPTURE(q);
            for (Route route : all_routes)
                CHECK(a_route(route, ParamPair(p, q)).value > 0.0);
            CHECK(a_direct(ParamPair(p, q)).value < pi * pi / 2);
        }
    }
}

TEST_CASE("grid sweep is ordered and independent of the thread count")
{
    const auto values = linspace(0.1, 0.9, 3);
    REQUIRE(values.size() == 3);
    CHECK(values[1] == doctest::Approx(0.5));
    const auto serial = invariance_grid(values, values, 1e-9, {}, 1);
    const auto parallel = invariance_grid(values, values, 1e-9, {}, 4);
    REQUIRE(serial.size() == 9);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].p == values[i / 3]);
        CHECK(serial[i].q == values[i % 3]);
        CHECK(serial[i].report.a_pq == parallel[i].report.a_pq);
        CHECK(serial[i].report.a_pcqc == parallel[i].report.a_pcqc);
        CHECK(serial[i].report.pass);
    }
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("individual chain identities")
{
    for (int i = 1; i <= 9; ++i)
        CHECK(check_k_integral(i / 10.0, 1e-10).pass);

    const ChainEntry half = check_log_integral_1(0.5, 1e-10);
    CHECK(half.pass);
    CHECK(std::abs(half.rhs - 1.8540746773013719 * std::log(0.5)) <= 1e-14);

    for (int i = 1; i <= 9; ++i) {
        const double alpha = i / 10.0;
        CAPTURE(alpha);
        CHECK(check_log_integral_1(alpha, 1e-10).pass);
        CHECK(check_log_integral_2(alpha, 1e-10).pass);
    }

    for (int i = 1; i <= 5; ++i)
        CHECK(check_addition_formula(0.7, 0.3, i / 6.0, 1e-8).pass);
    CHECK_THROWS_AS(check_addition_formula(0.3, 0.7, 0.5, 1e-8), std::domain_error);

    for (const ChainEntry& e : check_sqrt_split(0.6, 0.8, 1e-12))
        CHECK(e.pass);
    // p -> 0 collapse: p' = 1
    for (const ChainEntry& e : check_sqrt_split(0.0, 1.0, 1e-15))
        CHECK(e.pass);

    const LemmaParams in_range = in_range_params(ParamPair(0.6, 0.3));
    CHECK(in_range.beta > 0.0);
    CHECK(in_range.alpha > in_range.beta);
    CHECK(in_range.alpha < 1.0);
}

TEST_CASE("proof chain at (0.6, 0.3)")
{
    const ChainReport report = verify_proof_chain(ParamPair(0.6, 0.3), 5);
    CHECK(report.all_pass());
    int addition = 0;
    for (const ChainEntry& e : report.entries) {
        CAPTURE(e.identity_id);
        CAPTURE(e.diagnostic);
        CHECK(e.pass);
        if (e.identity_id.rfind("legendre-addition", 0) == 0)
            ++addition;
    }
    CHECK(addition == 5);
    CHECK_THROWS_AS(verify_proof_chain(ParamPair(0.6, 0.3), 0), std::invalid_argument);
}

TEST_CASE("a failing identity is reported, not thrown")
{
    const ChainEntry e = make_entry("x", 1.0, 2.0, 1e-9);
    CHECK_FALSE(e.pass);
    CHECK(e.abs_diff == 1.0);
    CHECK_FALSE(make_entry("nan", NAN, 1.0, 1e-9).pass);
    CHECK_FALSE(failed_entry("y", "boom").pass);
}
