#ifndef ELLIPTIC_LAB_ELLIPTIC_HPP
#define ELLIPTIC_LAB_ELLIPTIC_HPP

// Elliptic integrals of the first kind.
//
// Convention: every function here takes the *modulus* k, never the
// parameter m = k^2. An expression written K(sqrt(t)) maps to
// complete_K(Modulus::from_parameter(t)).

#include <functional>

#include "elliptic_lab/quad.hpp"

namespace elliptic_lab {

/// Modulus k in [0, 1]. Operations narrow the range further where K diverges.
class Modulus
{
public:
    explicit Modulus(double k);
    static Modulus from_parameter(double t);

    double k() const noexcept { return k_; }
    double parameter() const noexcept { return k_ * k_; }

    /// sqrt(1 - k^2), formed as sqrt((1-k)(1+k)).
    double complement() const noexcept;

private:
    double k_;
};

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a0, double b0);

/// K(k) = pi / (2 agm(1, k')), 0 <= k < 1.
double complete_K(Modulus k);

/// K'(k) = K(sqrt(1 - k^2)) = pi / (2 agm(1, k)), 0 < k <= 1.
double complete_K_comp(Modulus k);

/// F(phi, k) = \int_0^phi dtheta / sqrt(1 - k^2 sin^2 theta) by quadrature,
/// 0 <= phi <= pi/2, 0 <= k < 1.
Estimate incomplete_F(double phi, Modulus k, const QuadratureSpec& spec = {});

/// Y_lambda(X) = sqrt(X (1 - X) (1 - lambda X)) for 0 < lambda < 1.
class YKernel
{
public:
    explicit YKernel(double lambda);

    double lambda() const noexcept { return lambda_; }

    /// X in (0, 1).
    double operator()(double X) const;

    /// Same, with 1 - X supplied by the caller so that X near 1 keeps
    /// full relative precision.
    double operator()(double X, double one_minus_X) const;

private:
    double lambda_;
};

double y_kernel(double X, const YKernel& params);

struct LandenSides
{
    double lhs; // K(sqrt(s))
    double rhs; // K(2 s^(1/4) / (1 + sqrt s)) / (1 + sqrt s)
};

/// Both sides of the descending Landen transformation, 0 < s < 1.
LandenSides landen_descend(double s);

/// 2 K(f) / K'(f); strictly increasing in f.
double lambda_ratio(Modulus f);

/// Bisection for the modulus with ratio(k) == target on [1e-15, 1 - 1e-15].
/// `increasing` states the direction of the monotone ratio. Throws
/// std::domain_error when target lies outside the bracket's image.
Modulus solve_modulus(const std::function<double(Modulus)>& ratio, double target,
                      bool increasing);

/// f with 2 K(f) / K'(f) == lambda_target.
Modulus invert_lambda_ratio(double lambda_target);

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_ELLIPTIC_HPP
