#include "elliptic_lab/identity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "elliptic_lab/elliptic.hpp"
#include "elliptic_lab/legendre.hpp"

namespace elliptic_lab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// 1 - x given x and sqrt(1 - x^2), without cancellation near x = 1.
double one_minus(double x, double x_comp)
{
    return x_comp * x_comp / (1.0 + x);
}

// (1 - q)/(1 + q), formed as q'^2 / (1 + q)^2.
double landen_upper(double q, double q_comp)
{
    const double r = q_comp / (1.0 + q);
    return r * r;
}

Estimate scaled(Estimate est, double factor)
{
    est.value *= factor;
    est.error_bound *= std::abs(factor);
    return est;
}

Estimate combine(const Estimate& a, const Estimate& b, const QuadratureSpec& spec)
{
    Estimate sum{a.value + b.value, a.error_bound + b.error_bound, a.evaluations + b.evaluations,
                 a.converged && b.converged};
    sum.converged = sum.converged && sum.error_bound <= spec.target(sum.value);
    return sum;
}

} // namespace

// ---------------------------------------------------------------- ParamPair

ParamPair::ParamPair(double p, double q)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("ParamPair: p must lie in (0, 1)");
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("ParamPair: q must lie in (0, 1)");
    p_ = p;
    q_ = q;
    p_comp_ = std::sqrt((1.0 - p) * (1.0 + p));
    q_comp_ = std::sqrt((1.0 - q) * (1.0 + q));
}

ParamPair::ParamPair(double p, double q, double p_comp, double q_comp) noexcept
    : p_(p), q_(q), p_comp_(p_comp), q_comp_(q_comp)
{
}

ParamPair ParamPair::complement() const noexcept
{
    return ParamPair(p_comp_, q_comp_, p_, q_);
}

bool ParamPair::is_fixed_point() const noexcept
{
    return std::abs(p_ - p_comp_) <= 4.0 * eps && std::abs(q_ - q_comp_) <= 4.0 * eps;
}

LemmaParams::LemmaParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_)
{
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("LemmaParams: beta must lie in (0, 1)");
    if (!(alpha < 1.0) || !std::isfinite(alpha))
        throw std::domain_error("LemmaParams: alpha must be finite and < 1");
}

LemmaParams LemmaParams::from_pair(const ParamPair& pair)
{
    return LemmaParams(2.0 * pair.p() / (pair.p() - 1.0), 2.0 * pair.q() / (1.0 + pair.q()));
}

std::string_view route_name(Route route)
{
    switch (route) {
    case Route::direct:
        return "direct";
    case Route::theta_form:
        return "theta";
    case Route::lemma_reduced:
        return "lemma";
    case Route::final_form:
        return "final";
    }
    return "unknown";
}

// ------------------------------------------------------------------- routes

Estimate a_direct(const ParamPair& pair, const QuadratureSpec& spec)
{
    const double p = pair.p();
    const double q = pair.q();
    return integrate_triangular(
        [p, q](double x, double y) {
            return 1.0 / (std::sqrt(1.0 - p * std::cos(x)) * std::sqrt(1.0 + q * std::cos(y)));
        },
        pi, spec);
}

Estimate a_theta_form(const ParamPair& pair, const QuadratureSpec& spec)
{
    const double p = pair.p();
    const double q = pair.q();
    const double outer_coeff = 2.0 * p / (1.0 - p);
    const Modulus inner_modulus = Modulus::from_parameter(2.0 * q / (1.0 + q));
    const QuadratureSpec inner_spec = spec.tightened(inner_tightening);

    double worst_inner = 0.0;
    bool inner_converged = true;
    long inner_evaluations = 0;
    Estimate est = integrate(
        [&](double theta) {
            const Estimate f = incomplete_F(theta, inner_modulus, inner_spec);
            worst_inner = std::max(worst_inner, f.error_bound);
            inner_converged = inner_converged && f.converged;
            inner_evaluations += f.evaluations;
            const double s = std::sin(theta);
            return f.value / std::sqrt(1.0 + outer_coeff * s * s);
        },
        0.0, pi / 2, spec.tightened(2.0));
    // The outer weight 1/sqrt(1 + c sin^2) integrates to K(sqrt(c/(1+c))) / sqrt(1+c).
    const double weight_mass = complete_K(Modulus::from_parameter(outer_coeff / (1.0 + outer_coeff)))
                               / std::sqrt(1.0 + outer_coeff);
    est.error_bound += weight_mass * worst_inner;
    est.evaluations += inner_evaluations;
    est = scaled(est, 4.0 / std::sqrt((1.0 - p) * (1.0 + q)));
    est.converged = est.converged && inner_converged && est.error_bound <= spec.target(est.value);
    return est;
}

Estimate a_lemma_reduced(const ParamPair& pair, const QuadratureSpec& spec)
{
    const LemmaParams lp = LemmaParams::from_pair(pair);
    const double beta = lp.beta;
    const double root_one_minus_alpha = std::sqrt(1.0 - lp.alpha);
    const double k_comp_beta = complete_K(Modulus::from_parameter(1.0 - beta));
    const double k_beta = complete_K(Modulus::from_parameter(beta));

    const Estimate lower = integrate(
        [=](double t) {
            const double r = std::sqrt(1.0 - t);
            return k_comp_beta * complete_K(Modulus::from_parameter(t))
                   / ((r + root_one_minus_alpha) * r);
        },
        0.0, beta, spec);
    const Estimate upper = integrate(
        [=](const Abscissa& node) {
            const double r = std::sqrt(node.to_upper);
            return k_beta * complete_K(Modulus(r)) / ((r + root_one_minus_alpha) * r);
        },
        beta, 1.0, spec);

    const double prefactor = 4.0 / std::sqrt((1.0 - pair.p()) * (1.0 + pair.q()));
    Estimate est = scaled(combine(lower, upper, spec), prefactor / pi);
    est.converged = lower.converged && upper.converged && est.error_bound <= spec.target(est.value);
    return est;
}

namespace {

// 2 sqrt2 P(1 - 2 w^2) \int_0^{(1-w)/(1+w)} K(sqrt s) ds / (sqrt s D(s)),
// D(s) = (1 - sqrt s) sqrt(1 - v) + (1 + sqrt s) sqrt(1 + v).
// w is the q-like and v the p-like parameter of one addend.
Estimate final_addend(double v, double v_comp, double w, double w_comp, const QuadratureSpec& spec)
{
    const double root_minus = std::sqrt(one_minus(v, v_comp));
    const double root_plus = std::sqrt(1.0 + v);
    const double weight = 2.0 * std::numbers::sqrt2 * p_quarter(LegendreArg(w * w));
    const Estimate est = integrate(
        [=](double s) {
            const double r = std::sqrt(s);
            return complete_K(Modulus(r)) / (r * ((1.0 - r) * root_minus + (1.0 + r) * root_plus));
        },
        0.0, landen_upper(w, w_comp), spec);
    return scaled(est, weight);
}

} // namespace

Estimate a_final_form(const ParamPair& pair, const QuadratureSpec& spec)
{
    const Estimate first = final_addend(pair.p(), pair.p_comp(), pair.q_comp(), pair.q(), spec);
    const Estimate second = final_addend(pair.p_comp(), pair.p(), pair.q(), pair.q_comp(), spec);
    return combine(first, second, spec);
}

Estimate a_route(Route route, const ParamPair& pair, const QuadratureSpec& spec)
{
    switch (route) {
    case Route::direct:
        return a_direct(pair, spec);
    case Route::theta_form:
        return a_theta_form(pair, spec);
    case Route::lemma_reduced:
        return a_lemma_reduced(pair, spec);
    case Route::final_form:
        return a_final_form(pair, spec);
    }
    throw std::invalid_argument("a_route: unknown route");
}

std::vector<RouteReport> evaluate_routes(const ParamPair& pair, const QuadratureSpec& spec)
{
    std::vector<RouteReport> reports;
    for (Route route : all_routes) {
        const Estimate est = a_route(route, pair, spec);
        reports.push_back({route, est.value, est.error_bound, est.converged});
    }
    return reports;
}

double route_spread(const std::vector<RouteReport>& reports)
{
    if (reports.empty())
        return 0.0;
    auto [lo, hi] = std::minmax_element(reports.begin(), reports.end(),
                                        [](const auto& a, const auto& b) { return a.value < b.value; });
    const double mean = std::accumulate(reports.begin(), reports.end(), 0.0,
                                        [](double acc, const auto& r) { return acc + r.value; })
                        / static_cast<double>(reports.size());
    return (hi->value - lo->value) / std::abs(mean);
}

// ---------------------------------------------------------------- invariance

InvarianceReport verify_invariance(const ParamPair& pair, double rel_tol, const QuadratureSpec& spec)
{
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("verify_invariance: tolerance must be positive");
    const Estimate here = a_direct(pair, spec);
    if (pair.is_fixed_point())
        return make_invariance(here.value, here.value, rel_tol, 2.0 * here.error_bound, here.converged);
    const Estimate there = a_direct(pair.complement(), spec);
    return make_invariance(here.value, there.value, rel_tol, here.error_bound + there.error_bound,
                           here.converged && there.converged);
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 2)
        throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    values.back() = hi;
    return values;
}

std::vector<GridPoint> invariance_grid(const std::vector<double>& p_values,
                                       const std::vector<double>& q_values, double rel_tol,
                                       const QuadratureSpec& spec, unsigned threads)
{
    std::vector<GridPoint> grid;
    grid.reserve(p_values.size() * q_values.size());
    for (double p : p_values)
        for (double q : q_values)
            grid.push_back({p, q, {}});
    // Reject bad points before any work starts.
    for (const GridPoint& point : grid)
        (void)ParamPair(point.p, point.q);

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size() && !failed; i = next++) {
            try {
                grid[i].report = verify_invariance(ParamPair(grid[i].p, grid[i].q), rel_tol, spec);
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);
    return grid;
}

// ------------------------------------------------------------- proof chain

ChainEntry check_k_integral(double lambda, double tol, const QuadratureSpec& spec)
{
    const YKernel Y(lambda);
    const Estimate half = integrate(
        [&Y](const Abscissa& node) { return 1.0 / Y(node.x, node.to_upper); }, 0.0, 1.0, spec);
    return make_entry("K-integral-repn", 0.5 * half.value, complete_K(Modulus::from_parameter(lambda)),
                      tol);
}

ChainEntry check_log_integral_1(double alpha, double tol, const QuadratureSpec& spec)
{
    const YKernel Y(alpha);
    const Estimate lhs = integrate(
        [&Y, alpha](const Abscissa& node) {
            return std::log1p(-alpha * node.x) / Y(node.x, node.to_upper);
        },
        0.0, 1.0, spec);
    const double rhs = complete_K(Modulus::from_parameter(alpha)) * std::log1p(-alpha);
    return make_entry("log-integral-1", lhs.value, rhs, tol);
}

ChainEntry check_log_integral_2(double alpha, double tol, const QuadratureSpec& spec)
{
    const YKernel Y(1.0 - alpha);
    const Estimate lhs = integrate(
        [&Y, alpha](const Abscissa& node) {
            const double one_minus_v = node.to_upper;
            const double numerator = alpha + (1.0 - alpha) * one_minus_v;
            return (std::log(numerator) - std::log(one_minus_v)) / Y(node.x, one_minus_v);
        },
        0.0, 1.0, spec);
    const double rhs = pi * complete_K(Modulus::from_parameter(alpha))
                       + complete_K(Modulus::from_parameter(1.0 - alpha)) * std::log1p(-alpha);
    return make_entry("log-integral-2", lhs.value, rhs, tol);
}

ChainEntry check_addition_formula(double alpha, double beta, double U, double tol,
                                  const QuadratureSpec& spec)
{
    if (!(0.0 < beta && beta < alpha && alpha < 1.0))
        throw std::domain_error("addition formula needs 0 < beta < alpha < 1");
    if (!(U > 0.0 && U < 1.0))
        throw std::domain_error("addition formula needs U in (0, 1)");
    const YKernel Y_alpha(alpha);
    const YKernel Y_beta(beta);
    const YKernel Y_comp_alpha(1.0 - alpha);
    const YKernel Y_comp_beta(1.0 - beta);
    const QuadratureSpec inner_spec = spec.tightened(inner_tightening);

    const Estimate tail = integrate(
        [&](const Abscissa& node) { return 1.0 / Y_beta(node.x, node.to_upper); }, U, 1.0, spec);
    const double lhs = pi / Y_alpha(U) * tail.value;

    const Estimate first = integrate(
        [&](const Abscissa& node) {
            const double V = node.x;
            return V / ((1.0 - alpha * U * V) * Y_alpha(V, node.to_upper));
        },
        0.0, 1.0, spec);
    const Estimate second = integrate(
        [&](const Abscissa& node) {
            const double V = node.x;
            return V / ((1.0 - (1.0 - alpha * U) * V) * Y_comp_alpha(V, node.to_upper));
        },
        0.0, 1.0, spec);

    // X runs over ((1-alpha)/(1-beta), 1), V over (L(X), 1) with
    // 1 - L(X) = (1 - beta)(X - X0)/alpha. The inner integral is taken in
    // w = sqrt(1 - V), which removes its 1/sqrt(1 - V) and keeps arbitrarily
    // short V-intervals resolvable.
    const double X0 = (1.0 - alpha) / (1.0 - beta);
    const Estimate third = integrate(
        [&](const Abscissa& outer) {
            const double X = outer.x;
            const double width = (1.0 - beta) * outer.from_lower / alpha;
            const Estimate inner = integrate(
                [&](double w) {
                    const double V = 1.0 - w * w;
                    const double one_minus_alpha_v = (1.0 - alpha) + alpha * w * w;
                    return 2.0 * alpha * V / ((1.0 - alpha * U * V) * std::sqrt(V * one_minus_alpha_v));
                },
                0.0, std::sqrt(width), inner_spec);
            return inner.value / Y_comp_beta(X, outer.to_upper);
        },
        X0, 1.0, spec);

    const double rhs = 2.0 * alpha * complete_K(Modulus::from_parameter(1.0 - beta)) * first.value
                       + 2.0 * alpha * complete_K(Modulus::from_parameter(beta)) * second.value
                       - third.value;
    std::ostringstream id;
    id << "legendre-addition@U=" << U;
    return make_entry(id.str(), lhs, rhs, tol);
}

std::array<ChainEntry, 2> check_sqrt_split(double p, double p_comp, double tol)
{
    const double a = std::sqrt((1.0 + p_comp) / 2.0);
    const double b = std::sqrt((1.0 - p_comp) / 2.0);
    return {make_entry("sqrt-split+", a + b, std::sqrt(1.0 + p), tol),
            make_entry("sqrt-split-", a - b, std::sqrt(1.0 - p), tol)};
}

LemmaParams in_range_params(const ParamPair& pair)
{
    const double beta = 2.0 * pair.q() / (1.0 + pair.q());
    const double alpha = std::max(2.0 * pair.p() / (1.0 + pair.p()), beta + 0.1);
    if (alpha < 1.0)
        return LemmaParams(alpha, beta);
    return LemmaParams(0.7, 0.3);
}

namespace {

template <typename Check>
void record(ChainReport& report, const std::string& id, Check&& check)
{
    try {
        check();
    } catch (const std::exception& e) {
        report.entries.push_back(failed_entry(id, e.what()));
    }
}

} // namespace

ChainReport verify_proof_chain(const ParamPair& pair, int samples, const QuadratureSpec& spec,
                               ChainTolerances tol)
{
    if (samples < 1)
        throw std::invalid_argument("verify_proof_chain: samples must be >= 1");
    ChainReport report;
    auto& entries = report.entries;
    const double beta = 2.0 * pair.q() / (1.0 + pair.q());
    const LemmaParams in_range = in_range_params(pair);

    record(report, "K-integral-repn", [&] {
        ChainEntry at_beta = check_k_integral(beta, tol.identity, spec);
        at_beta.identity_id += "[beta]";
        entries.push_back(at_beta);
        ChainEntry at_comp = check_k_integral(1.0 - beta, tol.identity, spec);
        at_comp.identity_id += "[1-beta]";
        entries.push_back(at_comp);
    });
    record(report, "legendre-addition", [&] {
        for (int i = 1; i <= samples; ++i) {
            const double U = static_cast<double>(i) / (samples + 1);
            entries.push_back(
                check_addition_formula(in_range.alpha, in_range.beta, U, tol.addition, spec));
        }
    });
    record(report, "log-integral-1",
           [&] { entries.push_back(check_log_integral_1(in_range.alpha, tol.identity, spec)); });
    record(report, "log-integral-2",
           [&] { entries.push_back(check_log_integral_2(in_range.alpha, tol.identity, spec)); });
    record(report, "ramanujan", [&] {
        for (ChainEntry& e : ramanujan_check(pair.q(), tol.identity, spec))
            entries.push_back(std::move(e));
    });
    record(report, "landen", [&] {
        const LandenSides sides = landen_descend(landen_upper(pair.q_comp(), pair.q()));
        entries.push_back(make_entry("landen", sides.lhs, sides.rhs, tol.identity));
    });
    record(report, "sqrt-split", [&] {
        for (ChainEntry& e : check_sqrt_split(pair.p(), pair.p_comp(), tol.identity))
            entries.push_back(std::move(e));
    });
    record(report, "route-agreement", [&] {
        const std::vector<RouteReport> routes = evaluate_routes(pair, spec);
        auto [lo, hi] = std::minmax_element(
            routes.begin(), routes.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
        double combined = 0.0;
        for (const RouteReport& r : routes)
            combined += r.error_bound;
        ChainEntry entry;
        entry.identity_id = "route-agreement";
        entry.lhs = hi->value;
        entry.rhs = lo->value;
        entry.abs_diff = hi->value - lo->value;
        entry.tolerance = tol.identity * std::abs(lo->value);
        entry.pass = std::isfinite(entry.abs_diff) && entry.abs_diff <= entry.tolerance;
        std::ostringstream diag;
        diag.precision(3);
        diag << "relative spread " << route_spread(routes) << ", combined error bound " << combined;
        entry.diagnostic = diag.str();
        entries.push_back(entry);
    });
    return report;
}

} // namespace elliptic_lab
