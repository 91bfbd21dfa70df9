#include "elliptic_lab/hall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace elliptic_lab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double checked_ratio(double lambda, const char* what)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error(what);
    return lambda;
}

} // namespace

double lambda_p_ratio(Modulus p)
{
    return complete_K_comp(p) / (2.0 * complete_K(p));
}

HallInput::HallInput(double lambda_f, double lambda_p)
    : HallInput(lambda_f, lambda_p, 2.0 / checked_ratio(lambda_f, "HallInput: lambda_f must be positive"),
                2.0 / checked_ratio(lambda_p, "HallInput: lambda_p must be positive"))
{
}

HallInput::HallInput(double lambda_f, double lambda_p, double image_f, double image_p)
    : lambda_f_(checked_ratio(lambda_f, "HallInput: lambda_f must be positive")),
      lambda_p_(checked_ratio(lambda_p, "HallInput: lambda_p must be positive")),
      image_f_(image_f),
      image_p_(image_p),
      f_(invert_lambda_ratio(lambda_f)),
      p_(solve_modulus(lambda_p_ratio, lambda_p, false))
{
}

HallInput HallInput::substituted() const
{
    return HallInput(image_f_, image_p_, lambda_f_, lambda_p_);
}

bool HallInput::is_fixed_point() const noexcept
{
    return std::abs(lambda_f_ - image_f_) <= 4.0 * eps * lambda_f_
           && std::abs(lambda_p_ - image_p_) <= 4.0 * eps * lambda_p_;
}

Estimate hall_inner(double x, double one_minus_x, Modulus p, const QuadratureSpec& spec)
{
    if (x <= 0.0)
        return {0.0, 0.0, 0, true};
    const double pk = p.k();
    const double k_p = (1.0 - pk) / (1.0 + pk);
    const double one_minus_k_p = 2.0 * pk / (1.0 + pk);
    return integrate(
        [=](const Abscissa& node) {
            const double y = node.x;
            const double one_minus_y = one_minus_x + node.to_upper;
            const double one_minus_ky = one_minus_k_p + k_p * one_minus_y;
            return 1.0 / (std::sqrt(one_minus_ky * (1.0 + k_p * y)) * std::sqrt(one_minus_y * (1.0 + y)));
        },
        0.0, x, spec);
}

HallResult hall_g_direct(Modulus f, Modulus p, const QuadratureSpec& spec)
{
    if (!(f.k() > 0.0 && f.k() < 1.0) || !(p.k() > 0.0 && p.k() < 1.0))
        throw std::domain_error("hall_g_direct: moduli must lie in (0, 1)");
    const double fk = f.k();
    const double pk = p.k();
    const double k_p = (1.0 - pk) / (1.0 + pk);
    const double k_f = (1.0 - fk) / (1.0 + fk);
    // 1 - k_f^2 = 4f/(1+f)^2, kept exact for f near 1.
    const double k_f_comp2 = 4.0 * fk / ((1.0 + fk) * (1.0 + fk));
    const double k_f2 = k_f * k_f;
    const QuadratureSpec inner_spec = spec.tightened(inner_tightening);

    double worst_inner = 0.0;
    bool inner_converged = true;
    const Estimate outer = integrate(
        [&](const Abscissa& node) {
            const double x = node.x;
            const Estimate inner = hall_inner(x, node.to_upper, p, inner_spec);
            worst_inner = std::max(worst_inner, inner.error_bound);
            inner_converged = inner_converged && inner.converged;
            // 1 - (1 - k_f^2)(1 - x^2) = k_f^2 + (1 - k_f^2) x^2
            return inner.value
                   / (std::sqrt(node.to_upper * (1.0 + x)) * std::sqrt(k_f2 + k_f_comp2 * x * x));
        },
        0.0, 1.0, spec.tightened(2.0));

    // K(k_f) = K'(k_f') with k_f' = 2 sqrt f / (1 + f); the outer weight integrates to K(k_f').
    const double k_f_comp = 2.0 * std::sqrt(fk) / (1.0 + fk);
    const double prefactor = 1.0 / (complete_K_comp(Modulus(k_p)) * complete_K_comp(Modulus(k_f_comp)));
    const double weight_mass = complete_K(Modulus(k_f_comp));

    HallResult result;
    result.g = prefactor * outer.value;
    result.error_bound = prefactor * (outer.error_bound + weight_mass * worst_inner);
    result.normalized = result.g / std::sqrt(lambda_ratio(f) * lambda_p_ratio(p));
    result.converged = outer.converged && inner_converged
                       && result.error_bound <= spec.target(result.g);
    return result;
}

HallResult hall_g(const HallInput& input, const QuadratureSpec& spec)
{
    HallResult result = hall_g_direct(input.f(), input.p(), spec);
    result.normalized = result.g / std::sqrt(input.lambda_f() * input.lambda_p());
    return result;
}

InvarianceReport verify_device_symmetry(const HallInput& input, double rel_tol, const QuadratureSpec& spec)
{
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("verify_device_symmetry: tolerance must be positive");
    const HallResult here = hall_g(input, spec);
    const double here_bound = here.error_bound / std::sqrt(input.lambda_f() * input.lambda_p());
    if (input.is_fixed_point())
        return make_invariance(here.normalized, here.normalized, rel_tol, 2.0 * here_bound, here.converged);
    const HallInput image = input.substituted();
    const HallResult there = hall_g(image, spec);
    const double there_bound = there.error_bound / std::sqrt(image.lambda_f() * image.lambda_p());
    return make_invariance(here.normalized, there.normalized, rel_tol, here_bound + there_bound,
                           here.converged && there.converged);
}

} // namespace elliptic_lab
