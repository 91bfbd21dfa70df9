#include "elliptic_lab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace elliptic_lab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double half_pi = std::numbers::pi / 2;

// Beyond this t the tanh-sinh gap 1 - tanh(pi/2 sinh t) underflows.
constexpr double t_max = 6.5;

// A side of the trapezoid sum stops after two consecutive terms this far
// below the largest term seen.
constexpr double negligible = 1e-20;

// Coarsest level that may declare convergence (h = 1/4).
constexpr int min_converged_level = 2;

double checked(double value, double x)
{
    if (!std::isfinite(value))
        throw EvaluationError(x, value);
    return value;
}

struct Side
{
    double sum = 0.0;
    double abs_sum = 0.0;
    double last = 0.0;
    bool forced = false;
};

// Sums the nodes t = first*h, (first+stride)*h, ... on one side of the
// centre. `right` selects the b side.
template <typename Eval>
Side sum_side(const Eval& eval, double a, double b, double hw, double h, long first, long stride,
              bool right, bool plain, double& peak, long& evaluations)
{
    Side side;
    int quiet = 0;
    for (long k = first;; k += stride) {
        const double t = static_cast<double>(k) * h;
        if (t > t_max) {
            side.forced = true;
            break;
        }
        const double u = half_pi * std::sinh(t);
        const double e = std::exp(-2.0 * u);
        const double gap = hw * (2.0 * e / (1.0 + e));
        const double weight = half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (gap == 0.0) {
            side.forced = true;
            break;
        }
        Abscissa node;
        if (right)
            node = {b - gap, 2.0 * hw - gap, gap};
        else
            node = {a + gap, gap, 2.0 * hw - gap};
        if (plain && (node.x <= a || node.x >= b)) {
            side.forced = true;
            break;
        }
        const double term = weight * checked(eval(node), node.x);
        ++evaluations;
        side.sum += term;
        side.abs_sum += std::abs(term);
        side.last = term;
        peak = std::max(peak, std::abs(term));
        if (t >= 1.0 && std::abs(term) <= negligible * peak) {
            if (++quiet >= 2)
                break;
        } else {
            quiet = 0;
        }
    }
    return side;
}

template <typename Eval>
Estimate tanh_sinh(const Eval& eval, double a, double b, const QuadratureSpec& spec, bool plain)
{
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    Estimate est;
    double peak = 0.0;

    // Level 0: h = 1, all integer t.
    const double centre = half_pi * checked(eval(Abscissa{c, c - a, b - c}), c);
    ++est.evaluations;
    peak = std::abs(centre);
    Side left = sum_side(eval, a, b, hw, 1.0, 1, 1, false, plain, peak, est.evaluations);
    Side right = sum_side(eval, a, b, hw, 1.0, 1, 1, true, plain, peak, est.evaluations);
    double sum = centre + left.sum + right.sum;
    double abs_sum = std::abs(centre) + left.abs_sum + right.abs_sum;
    double integral = hw * sum;

    for (int level = 1; level <= spec.max_levels; ++level) {
        const double h = std::ldexp(1.0, -level);
        left = sum_side(eval, a, b, hw, h, 1, 2, false, plain, peak, est.evaluations);
        right = sum_side(eval, a, b, hw, h, 1, 2, true, plain, peak, est.evaluations);
        sum += left.sum + right.sum;
        abs_sum += left.abs_sum + right.abs_sum;
        const double refined = hw * h * sum;

        double tail = 0.0;
        if (left.forced)
            tail += hw * std::abs(left.last);
        if (right.forced)
            tail += hw * std::abs(right.last);
        est.value = refined;
        est.error_bound = std::abs(refined - integral) + tail + 4.0 * eps * hw * h * abs_sum;
        integral = refined;
        if (level >= std::min(min_converged_level, spec.max_levels)) {
            if (est.error_bound <= spec.target(refined)) {
                est.converged = true;
                return est;
            }
            // Rounding alone exceeds the target; further levels cannot help.
            if (4.0 * eps * hw * h * abs_sum > spec.target(refined))
                return est;
        }
    }
    return est;
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1]; index 7 is the centre.
constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Refinement stops once this many panels are open.
constexpr std::size_t max_panels = 2000;

struct Panel
{
    double lo, hi;
    double value, error, abs_value;
    int depth;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename Eval>
Panel gauss_kronrod(const Eval& eval, double a, double b, double lo, double hi, int depth,
                    long& evaluations)
{
    const double c = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    auto at = [&](double x) {
        ++evaluations;
        return checked(eval(Abscissa{x, x - a, b - x}), x);
    };
    const double fc = at(c);
    double kronrod = kronrod_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    double abs_value = std::abs(kronrod);
    for (int i = 0; i < 7; ++i) {
        const double f1 = at(c - hw * gk_nodes[i]);
        const double f2 = at(c + hw * gk_nodes[i]);
        kronrod += kronrod_weights[i] * (f1 + f2);
        abs_value += kronrod_weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1)
            gauss += gauss_weights[i / 2] * (f1 + f2);
    }
    return {lo, hi, hw * kronrod, hw * std::abs(kronrod - gauss) + 2.0 * eps * hw * abs_value,
            hw * abs_value, depth};
}

template <typename Eval>
Estimate adaptive_gauss(const Eval& eval, double a, double b, const QuadratureSpec& spec)
{
    Estimate est;
    std::priority_queue<Panel> open;
    open.push(gauss_kronrod(eval, a, b, a, b, 0, est.evaluations));
    double value = open.top().value;
    double error = open.top().error;
    double settled_value = 0.0;
    double settled_error = 0.0;

    while (!open.empty() && open.size() < max_panels && error > spec.target(value)) {
        const Panel worst = open.top();
        open.pop();
        if (worst.depth >= spec.max_levels) {
            // Too deep to split; its error stays in the budget.
            settled_value += worst.value;
            settled_error += worst.error;
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel lower = gauss_kronrod(eval, a, b, worst.lo, mid, worst.depth + 1, est.evaluations);
        const Panel upper = gauss_kronrod(eval, a, b, mid, worst.hi, worst.depth + 1, est.evaluations);
        value += lower.value + upper.value - worst.value;
        error += lower.error + upper.error - worst.error;
        open.push(lower);
        open.push(upper);
    }
    // Re-sum to drop the drift of the running updates.
    double total = settled_value;
    double total_error = settled_error;
    for (; !open.empty(); open.pop()) {
        total += open.top().value;
        total_error += open.top().error;
    }
    est.value = total;
    est.error_bound = total_error;
    est.converged = est.error_bound <= spec.target(est.value);
    return est;
}

void check_interval(double a, double b)
{
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
        std::ostringstream msg;
        msg << "integrate: need finite a < b, got (" << a << ", " << b << ")";
        throw std::invalid_argument(msg.str());
    }
}

template <typename Eval>
Estimate dispatch(const Eval& eval, double a, double b, const QuadratureSpec& spec, bool plain)
{
    spec.validate();
    check_interval(a, b);
    if (spec.rule == Rule::adaptive_gauss)
        return adaptive_gauss(eval, a, b, spec);
    return tanh_sinh(eval, a, b, spec, plain);
}

} // namespace

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_levels < 1)
        throw std::invalid_argument("QuadratureSpec: need abs_tol > 0, rel_tol > 0, max_levels >= 1");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const
{
    QuadratureSpec inner = *this;
    inner.abs_tol /= factor;
    inner.rel_tol /= factor;
    return inner;
}

double QuadratureSpec::target(double value) const
{
    return std::max(abs_tol, rel_tol * std::abs(value));
}

EvaluationError::EvaluationError(double abscissa, double value)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg.precision(17);
          msg << "integrand returned " << value << " at x = " << abscissa;
          return msg.str();
      }()),
      abscissa_(abscissa)
{
}

Estimate integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    auto eval = [&f](const Abscissa& node) { return f(node.x); };
    return dispatch(eval, a, b, spec, true);
}

Estimate integrate(const GapIntegrand& f, double a, double b, const QuadratureSpec& spec)
{
    return dispatch(f, a, b, spec, false);
}

Estimate integrate_triangular(const Integrand2D& g, double X, const QuadratureSpec& spec)
{
    if (!(std::isfinite(X) && X > 0.0))
        throw std::invalid_argument("integrate_triangular: need finite X > 0");
    spec.validate();
    const QuadratureSpec inner_spec = spec.tightened(inner_tightening);
    double worst_inner = 0.0;
    bool inner_converged = true;
    long inner_evaluations = 0;

    auto outer = [&](double x) {
        const Estimate inner =
            integrate([&g, x](double y) { return g(x, y); }, 0.0, x, inner_spec);
        worst_inner = std::max(worst_inner, inner.error_bound);
        inner_converged = inner_converged && inner.converged;
        inner_evaluations += inner.evaluations;
        return inner.value;
    };
    Estimate est = integrate(Integrand(outer), 0.0, X, spec.tightened(2.0));
    est.error_bound += X * worst_inner;
    est.evaluations += inner_evaluations;
    est.converged = est.converged && inner_converged && est.error_bound <= spec.target(est.value);
    return est;
}

} // namespace elliptic_lab
