#ifndef ELLIPTIC_LAB_REPORT_HPP
#define ELLIPTIC_LAB_REPORT_HPP

// Pass/fail evidence shared by the verification entry points.

#include <string>
#include <vector>

namespace elliptic_lab {

struct ChainEntry
{
    std::string identity_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string diagnostic;
};

/// Entry with tolerance tol * max(1, |rhs|); non-finite sides fail.
ChainEntry make_entry(std::string id, double lhs, double rhs, double tol);

/// Failed entry carrying only a diagnostic.
ChainEntry failed_entry(std::string id, std::string diagnostic);

struct ChainReport
{
    std::vector<ChainEntry> entries;

    bool all_pass() const;
};

/// Value of a quantity at a point and at its image under an involution.
struct InvarianceReport
{
    double a_pq = 0.0;
    double a_pcqc = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    double error_bound = 0.0; // combined quadrature bound of both sides
    bool converged = true;
    bool pass = false;
};

/// pass = abs_diff <= rel_tol * |a_pq|.
InvarianceReport make_invariance(double a_pq, double a_pcqc, double rel_tol, double error_bound,
                                 bool converged);

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_REPORT_HPP
