#ifndef ELLIPTIC_LAB_LEGENDRE_HPP
#define ELLIPTIC_LAB_LEGENDRE_HPP

// The Legendre function of degree -1/4,
//
//   P_{-1/4}(1 - 2t) = 2F1(1/4, 3/4; 1; t),   0 <= t < 1,
//
// by three independent routes, and the two modular relations tying it to K.
// Every function takes the hypergeometric argument t, not 1 - 2t.

#include <vector>

#include "elliptic_lab/quad.hpp"
#include "elliptic_lab/report.hpp"

namespace elliptic_lab {

/// Hypergeometric argument t in [0, 1).
class LegendreArg
{
public:
    explicit LegendreArg(double t);
    double t() const noexcept { return t_; }

private:
    double t_;
};

/// Largest t served by the power series.
inline constexpr double series_limit = 0.75;

/// Sum of [(1/4)_n (3/4)_n / (n!)^2] t^n; t <= 3/4, at most 10000 terms.
double p_quarter_series(LegendreArg t);

/// (1/(sqrt2 pi)) \int_0^1 [u(1-tu)/(1-u)]^(-1/4) du/(1-u) by tanh-sinh.
Estimate p_quarter_integral(LegendreArg t, const QuadratureSpec& spec = {});

/// (2 / (pi sqrt(1+q))) K(sqrt(2q/(1+q))) with q = sqrt(t).
double p_quarter_via_K(LegendreArg t);

/// Production evaluator: series up to 3/4, the K bridge above.
double p_quarter(LegendreArg t);

/// Representation used for P_{-1/4} in the Ramanujan checks: the series
/// inside its domain, the integral outside. Never the K bridge.
Estimate p_quarter_independent(LegendreArg t, const QuadratureSpec& spec = {});

/// Both relations for 0 < q < 1:
///   ramanujan-1: K(sqrt(2q/(1+q)))     = (pi/2) sqrt(1+q)     P(1 - 2q^2)
///   ramanujan-2: K(sqrt((1-q)/(1+q)))  = (pi/2) sqrt((1+q)/2) P(2q^2 - 1)
std::vector<ChainEntry> ramanujan_check(double q, double tol = 1e-10,
                                        const QuadratureSpec& spec = {});

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_LEGENDRE_HPP
