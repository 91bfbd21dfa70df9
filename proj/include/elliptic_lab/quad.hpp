#ifndef ELLIPTIC_LAB_QUAD_HPP
#define ELLIPTIC_LAB_QUAD_HPP

// One-dimensional quadrature with integrable endpoint singularities, and
// iterated evaluation over the triangle 0 < y < x < X.
//
// The default rule is double-exponential (tanh-sinh). Its abscissae cluster
// at both endpoints, so algebraic and logarithmic endpoint singularities are
// absorbed without case analysis. Integrands are never evaluated at a or b.
//
// Integrands that blow up like (b - x)^(-s) should take an Abscissa instead of
// a bare double: near b, the value x = b - gap rounds to b long before gap
// underflows, while Abscissa::to_upper carries the gap itself.

#include <functional>
#include <stdexcept>
#include <string>

namespace elliptic_lab {

enum class Rule { double_exponential, adaptive_gauss };

struct QuadratureSpec
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_levels = 12;
    Rule rule = Rule::double_exponential;

    /// Throws std::invalid_argument unless abs_tol > 0, rel_tol > 0, max_levels >= 1.
    void validate() const;

    /// Same rule and depth with both tolerances divided by `factor`.
    QuadratureSpec tightened(double factor) const;

    /// max(abs_tol, rel_tol*|value|)
    double target(double value) const;
};

struct Estimate
{
    double value = 0.0;
    double error_bound = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// A quadrature node together with its distances to both interval ends,
/// each computed without cancellation.
struct Abscissa
{
    double x;
    double from_lower; // x - a
    double to_upper;   // b - x
};

/// Nested integrals split the requested tolerance: the outer quadrature runs
/// at spec.tightened(2), each inner one at spec.tightened(inner_tightening).
/// Much larger factors push inner targets into rounding noise near 1e-14.
inline constexpr double inner_tightening = 20.0;

using Integrand = std::function<double(double)>;
using GapIntegrand = std::function<double(const Abscissa&)>;
using Integrand2D = std::function<double(double, double)>;

/// Raised when the integrand returns a non-finite value at an interior node.
class EvaluationError : public std::runtime_error
{
public:
    EvaluationError(double abscissa, double value);
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

Estimate integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});
Estimate integrate(const GapIntegrand& f, double a, double b, const QuadratureSpec& spec = {});

/// \int_0^X dx \int_0^x dy g(x, y).
///
/// The outer error bound is inflated by X times the worst inner bound seen;
/// convergence is judged against the untightened spec.
Estimate integrate_triangular(const Integrand2D& g, double X, const QuadratureSpec& spec = {});

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_QUAD_HPP
