#ifndef ELLIPTIC_LAB_OUTPUT_HPP
#define ELLIPTIC_LAB_OUTPUT_HPP

// Machine-readable records printed by the command-line tool. Keys keep
// insertion order and reals are printed with 17 significant digits, so the
// same inputs always serialize to the same bytes.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "elliptic_lab/identity.hpp"

namespace elliptic_lab {

using Value = std::variant<double, long, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Value>>;

struct OutputRecord
{
    std::string command;
    Fields inputs;
    Fields outputs;
    Fields error_bounds;
    std::optional<bool> pass;
};

enum class Format { json, csv, text };

/// "%.17g"; non-finite values print as nan / inf / -inf.
std::string format_real(double value);
std::string format_value(const Value& value);

void write_json(std::ostream& out, const OutputRecord& record);

/// One row per field: section,name,value.
void write_csv(std::ostream& out, const OutputRecord& record);

void write_text(std::ostream& out, const OutputRecord& record);

void write_record(std::ostream& out, const OutputRecord& record, Format format);

inline constexpr const char* sweep_csv_header = "p,q,p_comp,q_comp,a_pq,a_pcqc,abs_diff,pass";

void write_sweep_csv(std::ostream& out, const std::vector<GridPoint>& grid);
void write_sweep_json(std::ostream& out, const std::vector<GridPoint>& grid);

} // namespace elliptic_lab

#endif // ELLIPTIC_LAB_OUTPUT_HPP
