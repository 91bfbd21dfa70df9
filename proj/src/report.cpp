#include "elliptic_lab/report.hpp"

#include <algorithm>
#include <cmath>

namespace elliptic_lab {

ChainEntry make_entry(std::string id, double lhs, double rhs, double tol)
{
    ChainEntry entry;
    entry.identity_id = std::move(id);
    entry.lhs = lhs;
    entry.rhs = rhs;
    entry.abs_diff = std::abs(lhs - rhs);
    entry.tolerance = tol * std::max(1.0, std::abs(rhs));
    entry.pass = std::isfinite(entry.abs_diff) && entry.abs_diff <= entry.tolerance;
    if (!std::isfinite(lhs) || !std::isfinite(rhs))
        entry.diagnostic = "non-finite side";
    return entry;
}

ChainEntry failed_entry(std::string id, std::string diagnostic)
{
    ChainEntry entry;
    entry.identity_id = std::move(id);
    entry.lhs = entry.rhs = entry.abs_diff = NAN;
    entry.diagnostic = std::move(diagnostic);
    return entry;
}

bool ChainReport::all_pass() const
{
    return !entries.empty()
           && std::all_of(entries.begin(), entries.end(), [](const ChainEntry& e) { return e.pass; });
}

InvarianceReport make_invariance(double a_pq, double a_pcqc, double rel_tol, double error_bound,
                                 bool converged)
{
    InvarianceReport report;
    report.a_pq = a_pq;
    report.a_pcqc = a_pcqc;
    report.abs_diff = std::abs(a_pq - a_pcqc);
    report.tolerance = rel_tol * std::abs(a_pq);
    report.error_bound = error_bound;
    report.converged = converged;
    report.pass = std::isfinite(report.abs_diff) && report.abs_diff <= report.tolerance;
    return report;
}

} // namespace elliptic_lab
