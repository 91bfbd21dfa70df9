#include "elliptic_lab/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace elliptic_lab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double bracket_margin = 1e-15;
constexpr int bisection_cap = 200;

[[noreturn]] void domain(const char* what, double value)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " (got " << value << ")";
    throw std::domain_error(msg.str());
}

} // namespace

Modulus::Modulus(double k) : k_(k)
{
    if (!(k >= 0.0 && k <= 1.0))
        domain("modulus must lie in [0, 1]", k);
}

Modulus Modulus::from_parameter(double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        domain("parameter must lie in [0, 1]", t);
    return Modulus(std::sqrt(t));
}

double Modulus::complement() const noexcept
{
    return std::sqrt((1.0 - k_) * (1.0 + k_));
}

double agm(double a0, double b0)
{
    if (!(a0 > 0.0) || !(b0 > 0.0) || !std::isfinite(a0) || !std::isfinite(b0))
        throw std::domain_error("agm: arguments must be positive and finite");
    double a = a0;
    double b = b0;
    // Quadratic convergence; 64 rounds is far beyond what doubles need.
    for (int i = 0; i < 64 && std::abs(a - b) > 4.0 * eps * a; ++i) {
        const double next = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next;
    }
    return 0.5 * (a + b);
}

double complete_K(Modulus k)
{
    if (k.k() >= 1.0)
        domain("complete_K diverges for k >= 1", k.k());
    return std::numbers::pi / (2.0 * agm(1.0, k.complement()));
}

double complete_K_comp(Modulus k)
{
    if (k.k() <= 0.0)
        domain("complete_K_comp diverges for k <= 0", k.k());
    return std::numbers::pi / (2.0 * agm(1.0, k.k()));
}

Estimate incomplete_F(double phi, Modulus k, const QuadratureSpec& spec)
{
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2))
        domain("incomplete_F: phi must lie in [0, pi/2]", phi);
    if (k.k() >= 1.0)
        domain("incomplete_F: need k < 1", k.k());
    if (phi == 0.0)
        return {0.0, 0.0, 0, true};
    const double m = k.parameter();
    return integrate(
        [m](double theta) {
            const double s = std::sin(theta);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, phi, spec);
}

YKernel::YKernel(double lambda) : lambda_(lambda)
{
    if (!(lambda > 0.0 && lambda < 1.0))
        domain("Y kernel: lambda must lie in (0, 1)", lambda);
}

double YKernel::operator()(double X) const
{
    return (*this)(X, 1.0 - X);
}

double YKernel::operator()(double X, double one_minus_X) const
{
    if (!(X > 0.0 && one_minus_X > 0.0))
        domain("Y kernel: X must lie in (0, 1)", X);
    return std::sqrt(X * one_minus_X * (1.0 - lambda_ * X));
}

double y_kernel(double X, const YKernel& params)
{
    return params(X);
}

LandenSides landen_descend(double s)
{
    if (!(s > 0.0 && s < 1.0))
        domain("landen_descend: s must lie in (0, 1)", s);
    const double root = std::sqrt(s);
    const double lhs = complete_K(Modulus(root));
    const double rhs = complete_K(Modulus(2.0 * std::sqrt(root) / (1.0 + root))) / (1.0 + root);
    return {lhs, rhs};
}

double lambda_ratio(Modulus f)
{
    return 2.0 * complete_K(f) / complete_K_comp(f);
}

Modulus solve_modulus(const std::function<double(Modulus)>& ratio, double target, bool increasing)
{
    if (!(target > 0.0) || !std::isfinite(target))
        domain("solve_modulus: target must be positive and finite", target);
    double lo = bracket_margin;
    double hi = 1.0 - bracket_margin;
    const double at_lo = ratio(Modulus(lo));
    const double at_hi = ratio(Modulus(hi));
    const double smallest = increasing ? at_lo : at_hi;
    const double largest = increasing ? at_hi : at_lo;
    if (target < smallest || target > largest)
        domain("solve_modulus: target outside the range reachable on [1e-15, 1 - 1e-15]", target);

    for (int i = 0; i < bisection_cap; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if ((ratio(Modulus(mid)) < target) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    // Return whichever end of the final bracket has the smaller residual.
    const double r_lo = std::abs(ratio(Modulus(lo)) - target);
    const double r_hi = std::abs(ratio(Modulus(hi)) - target);
    return Modulus(r_lo <= r_hi ? lo : hi);
}

Modulus invert_lambda_ratio(double lambda_target)
{
    return solve_modulus(lambda_ratio, lambda_target, true);
}

} // namespace elliptic_lab
