#ifndef ELLIPTIC_LAB_HALL_HPP
#define ELLIPTIC_LAB_HALL_HPP

// Hall-geometry factor of a symmetric Hall plate,
//
//   G = 1 / (K'(k_p) K(k_f)) \int_0^1 dx inner(x)
//           / (sqrt(1 - x^2) sqrt(1 - (1 - k_f^2)(1 - x^2))),
//   inner(x) = \int_0^x dy / (sqrt(1 - k_p^2 y^2) sqrt(1 - y^2)),
//
// with k_p = (1-p)/(1+p), k_f = (1-f)/(1+f), and the resistance ratios
// lambda_f = 2 K(f)/K'(f), lambda_p = K'(p)/(2 K(p)). The device symmetry
// states that G / sqrt(lambda_f lambda_p) is unchanged by
// (lambda_f, lambda_p) -> (2/lambda_f, 2/lambda_p).

#include "elliptic_lab/elliptic.hpp"
#include "elliptic_lab/quad.hpp"
#include "elliptic_lab/report.hpp"

namespace elliptic_lab {

/// K'(p) / (2 K(p)); strictly decreasing in p.
double lambda_p_ratio(Modulus p);

/// Resistance ratios with the moduli recovered from them.
///
/// substituted() swaps in the stored images 2/lambda, so substituting twice
/// returns the original ratios exactly.
class HallInput
{
public:
    HallInput(double lambda_f, double lambda_p);

    double lambda_f() const noexcept { return lambda_f_; }
    double lambda_p() const noexcept { return lambda_p_; }
    Modulus f() const noexcept { return f_; }
    Modulus p() const noexcept { return p_; }

    HallInput substituted() const;

    /// lambda_f, lambda_p both equal sqrt2 to a few ulps.
    bool is_fixed_point() const noexcept;

private:
    HallInput(double lambda_f, double lambda_p, double image_f, double image_p);

    double lambda_f_, lambda_p_;
    double image_f_, image_p_;
    Modulus f_, p_;
};

struct HallResult
{
    double g = 0.0;
    double normalized = 0.0; // g / sqrt(lambda_f lambda_p)
    double error_bound = 0.0;
    bool converged = false;
};

/// G from the moduli f, p in (0, 1); `normalized` uses the ratios implied by f and p.
HallResult hall_g_direct(Modulus f, Modulus p, const QuadratureSpec& spec = {});

/// inner(x) for the plate modulus p (k_p = (1-p)/(1+p)), with 1 - x supplied separately.
Estimate hall_inner(double x, double one_minus_x, Modulus p, const QuadratureSpec& spec = {});

/// G at the moduli recovered from the ratios; `normalized` uses the input ratios.
HallResult hall_g(const HallInput& input, const QuadratureSpec& spec = {});

/// Normalized G at the input and at its substitution; pass iff the
/// difference is within rel_tol of the first.
InvarianceReport verify_device_symmetry(const HallInput& input, double rel_tol = 1e-8,
                                        const QuadratureSpec& spec = {});

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_HALL_HPP
