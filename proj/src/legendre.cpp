#include "elliptic_lab/legendre.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "elliptic_lab/elliptic.hpp"

namespace elliptic_lab {

namespace {

constexpr int series_term_cap = 10000;
constexpr double series_cutoff = 1e-17;

} // namespace

LegendreArg::LegendreArg(double t) : t_(t)
{
    if (!(t >= 0.0 && t < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "P_{-1/4}: argument t must lie in [0, 1) (got " << t << ")";
        throw std::domain_error(msg.str());
    }
}

double p_quarter_series(LegendreArg arg)
{
    const double t = arg.t();
    if (t > series_limit)
        throw std::domain_error("p_quarter_series: t > 3/4 converges too slowly; use p_quarter_via_K");
    double sum = 1.0;
    double term = 1.0;
    for (int n = 0; n < series_term_cap; ++n) {
        const double dn = n;
        term *= (dn + 0.25) * (dn + 0.75) / ((dn + 1.0) * (dn + 1.0)) * t;
        if (term < series_cutoff * sum)
            return sum;
        sum += term;
    }
    throw std::runtime_error("p_quarter_series: term cap reached before convergence");
}

Estimate p_quarter_integral(LegendreArg arg, const QuadratureSpec& spec)
{
    const double t = arg.t();
    // u^(-1/4) (1 - t u)^(-1/4) (1 - u)^(-3/4), with 1 - t u = (1 - t) + t (1 - u).
    Estimate est = integrate(
        [t](const Abscissa& node) {
            const double u = node.x;
            const double one_minus_u = node.to_upper;
            const double one_minus_tu = (1.0 - t) + t * one_minus_u;
            return 1.0 / (std::pow(u * one_minus_tu, 0.25) * std::pow(one_minus_u, 0.75));
        },
        0.0, 1.0, spec);
    const double scale = 1.0 / (std::numbers::sqrt2 * std::numbers::pi);
    est.value *= scale;
    est.error_bound *= scale;
    return est;
}

double p_quarter_via_K(LegendreArg arg)
{
    const double q = std::sqrt(arg.t());
    const double k = complete_K(Modulus::from_parameter(2.0 * q / (1.0 + q)));
    return 2.0 * k / (std::numbers::pi * std::sqrt(1.0 + q));
}

double p_quarter(LegendreArg t)
{
    return t.t() <= series_limit ? p_quarter_series(t) : p_quarter_via_K(t);
}

Estimate p_quarter_independent(LegendreArg t, const QuadratureSpec& spec)
{
    if (t.t() <= series_limit)
        return {p_quarter_series(t), 0.0, 0, true};
    return p_quarter_integral(t, spec);
}

std::vector<ChainEntry> ramanujan_check(double q, double tol, const QuadratureSpec& spec)
{
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream msg;
        msg << "ramanujan_check: q must lie in (0, 1) (got " << q << ")";
        throw std::domain_error(msg.str());
    }
    const double half_pi = std::numbers::pi / 2;
    const double q2 = q * q;

    const double lhs1 = complete_K(Modulus::from_parameter(2.0 * q / (1.0 + q)));
    const double rhs1 = half_pi * std::sqrt(1.0 + q) * p_quarter_independent(LegendreArg(q2), spec).value;

    // P(2q^2 - 1) = P(1 - 2t) with t = 1 - q^2.
    const double lhs2 = complete_K(Modulus::from_parameter((1.0 - q) / (1.0 + q)));
    const double rhs2 = half_pi * std::sqrt((1.0 + q) / 2.0)
                        * p_quarter_independent(LegendreArg((1.0 - q) * (1.0 + q)), spec).value;

    return {make_entry("ramanujan-1", lhs1, rhs1, tol), make_entry("ramanujan-2", lhs2, rhs2, tol)};
}

} // namespace elliptic_lab
