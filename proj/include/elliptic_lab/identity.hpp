#ifndef ELLIPTIC_LAB_IDENTITY_HPP
#define ELLIPTIC_LAB_IDENTITY_HPP

// The double integral
//
//   A(p, q) = \int_0^pi dx \int_0^x dy 1 / (sqrt(1 - p cos x) sqrt(1 + q cos y))
//
// by four independent routes, its invariance under the complement map
// (p, q) -> (sqrt(1-p^2), sqrt(1-q^2)), and a numerical check of every
// identity used to derive that invariance.

#include <array>
#include <string_view>
#include <vector>

#include "elliptic_lab/quad.hpp"
#include "elliptic_lab/report.hpp"

namespace elliptic_lab {

/// p, q in (0, 1) together with p' = sqrt(1-p^2), q' = sqrt(1-q^2).
///
/// complement() swaps the stored pairs, so applying it twice returns the
/// original values bit for bit.
class ParamPair
{
public:
    ParamPair(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double p_comp() const noexcept { return p_comp_; }
    double q_comp() const noexcept { return q_comp_; }

    ParamPair complement() const noexcept;

    /// True when (p', q') equals (p, q) to a few ulps (the point 1/sqrt2).
    bool is_fixed_point() const noexcept;

private:
    ParamPair(double p, double q, double p_comp, double q_comp) noexcept;

    double p_, q_, p_comp_, q_comp_;
};

/// The lemma's (alpha, beta) with beta in (0, 1) and alpha < 1.
struct LemmaParams
{
    double alpha;
    double beta;

    LemmaParams(double alpha, double beta);

    /// alpha = 2p/(p-1) < 0, beta = 2q/(1+q): the continued lemma behind route 3.
    static LemmaParams from_pair(const ParamPair& pair);
};

enum class Route { direct, theta_form, lemma_reduced, final_form };

inline constexpr std::array<Route, 4> all_routes = {Route::direct, Route::theta_form,
                                                    Route::lemma_reduced, Route::final_form};

std::string_view route_name(Route route);

struct RouteReport
{
    Route route;
    double value;
    double error_bound;
    bool converged;
};

/// Iterated quadrature of the defining integrand over 0 < y < x < pi.
Estimate a_direct(const ParamPair& pair, const QuadratureSpec& spec = {});

/// 4/sqrt((1-p)(1+q)) \int_0^{pi/2} dtheta F(theta, sqrt beta) / sqrt(1 - alpha sin^2 theta).
Estimate a_theta_form(const ParamPair& pair, const QuadratureSpec& spec = {});

/// Prefactor times the lemma's two single integrals of K products, evaluated
/// at the analytically continued alpha = 2p/(p-1).
Estimate a_lemma_reduced(const ParamPair& pair, const QuadratureSpec& spec = {});

/// The two s-integrals weighted by P_{-1/4}; the expression is manifestly
/// symmetric under (p, q) <-> (p', q').
Estimate a_final_form(const ParamPair& pair, const QuadratureSpec& spec = {});

Estimate a_route(Route route, const ParamPair& pair, const QuadratureSpec& spec = {});

/// Relative spread (max - min) / mean of the route values.
double route_spread(const std::vector<RouteReport>& reports);

std::vector<RouteReport> evaluate_routes(const ParamPair& pair, const QuadratureSpec& spec = {});

/// A_direct at pair and at pair.complement(); pass iff |diff| <= rel_tol * A(p, q).
InvarianceReport verify_invariance(const ParamPair& pair, double rel_tol = 1e-9,
                                   const QuadratureSpec& spec = {});

struct GridPoint
{
    double p, q;
    InvarianceReport report;
};

/// verify_invariance over p_values x q_values, p-major. Points are spread
/// across `threads` workers; the result order never depends on scheduling.
std::vector<GridPoint> invariance_grid(const std::vector<double>& p_values,
                                       const std::vector<double>& q_values, double rel_tol,
                                       const QuadratureSpec& spec = {}, unsigned threads = 0);

/// n evenly spaced points from lo to hi inclusive; n >= 2.
std::vector<double> linspace(double lo, double hi, int n);

// Individual chain identities, exposed for the property tests.

/// (1/2) \int_0^1 dX / Y_lambda(X) against K(sqrt lambda).
ChainEntry check_k_integral(double lambda, double tol, const QuadratureSpec& spec = {});

/// \int_0^1 log(1 - alpha V) / Y_alpha(V) dV = K(sqrt alpha) log(1 - alpha).
ChainEntry check_log_integral_1(double alpha, double tol, const QuadratureSpec& spec = {});

/// \int_0^1 log[(1 - (1-alpha) V)/(1 - V)] / Y_{1-alpha}(V) dV
///   = pi K(sqrt alpha) + K(sqrt(1-alpha)) log(1 - alpha).
ChainEntry check_log_integral_2(double alpha, double tol, const QuadratureSpec& spec = {});

/// Legendre-type addition formula at one U for 0 < beta < alpha < 1.
ChainEntry check_addition_formula(double alpha, double beta, double U, double tol,
                                  const QuadratureSpec& spec = {});

/// sqrt((1+p')/2) + sqrt((1-p')/2) = sqrt(1+p) and the minus-sign twin.
std::array<ChainEntry, 2> check_sqrt_split(double p, double p_comp, double tol);

/// The in-range (alpha, beta) used for the addition formula and the log
/// integrals: (max(2p/(1+p), beta+0.1), 2q/(1+q)), or (0.7, 0.3) when that
/// is not inside 0 < beta < alpha < 1.
LemmaParams in_range_params(const ParamPair& pair);

struct ChainTolerances
{
    double identity = 1e-9;
    double addition = 1e-8;
};

ChainReport verify_proof_chain(const ParamPair& pair, int samples, const QuadratureSpec& spec = {},
                               ChainTolerances tol = {});

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_IDENTITY_HPP
