#include "elliptic_lab/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace elliptic_lab {

namespace {

std::string quoted(const std::string& s)
{
    return nlohmann::json(s).dump();
}

// JSON has no literal for non-finite reals; those travel as strings.
std::string json_value(const Value& value)
{
    if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d))
        return quoted(format_real(*d));
    if (const auto* s = std::get_if<std::string>(&value))
        return quoted(*s);
    return format_value(value);
}

void json_object(std::ostream& out, const Fields& fields, const char* indent)
{
    out << "{";
    bool first = true;
    for (const auto& [name, value] : fields) {
        out << (first ? "\n" : ",\n") << indent << "  " << quoted(name) << ": " << json_value(value);
        first = false;
    }
    if (!first)
        out << "\n" << indent;
    out << "}";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string escaped = "\"";
    for (char c : s) {
        if (c == '"')
            escaped += '"';
        escaped += c;
    }
    return escaped + "\"";
}

} // namespace

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_value(const Value& value)
{
    struct Visitor
    {
        std::string operator()(double d) const { return format_real(d); }
        std::string operator()(long n) const { return std::to_string(n); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, value);
}

void write_json(std::ostream& out, const OutputRecord& record)
{
    out << "{\n  \"command\": " << quoted(record.command) << ",\n  \"inputs\": ";
    json_object(out, record.inputs, "  ");
    out << ",\n  \"outputs\": ";
    json_object(out, record.outputs, "  ");
    out << ",\n  \"error_bounds\": ";
    json_object(out, record.error_bounds, "  ");
    if (record.pass)
        out << ",\n  \"pass\": " << (*record.pass ? "true" : "false");
    out << "\n}\n";
}

void write_csv(std::ostream& out, const OutputRecord& record)
{
    out << "section,name,value\n";
    out << "command,command," << csv_field(record.command) << "\n";
    auto rows = [&out](const char* section, const Fields& fields) {
        for (const auto& [name, value] : fields)
            out << section << "," << csv_field(name) << "," << csv_field(format_value(value)) << "\n";
    };
    rows("input", record.inputs);
    rows("output", record.outputs);
    rows("error_bound", record.error_bounds);
    if (record.pass)
        out << "pass,pass," << (*record.pass ? "true" : "false") << "\n";
}

void write_text(std::ostream& out, const OutputRecord& record)
{
    out << record.command << "\n";
    auto block = [&out](const char* title, const Fields& fields) {
        if (fields.empty())
            return;
        out << title << ":\n";
        for (const auto& [name, value] : fields)
            out << "  " << name << " = " << format_value(value) << "\n";
    };
    block("inputs", record.inputs);
    block("outputs", record.outputs);
    block("error bounds", record.error_bounds);
    if (record.pass)
        out << "pass: " << (*record.pass ? "yes" : "no") << "\n";
}

void write_record(std::ostream& out, const OutputRecord& record, Format format)
{
    switch (format) {
    case Format::json:
        write_json(out, record);
        break;
    case Format::csv:
        write_csv(out, record);
        break;
    case Format::text:
        write_text(out, record);
        break;
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<GridPoint>& grid)
{
    out << sweep_csv_header << "\n";
    for (const GridPoint& point : grid) {
        const ParamPair pair(point.p, point.q);
        const InvarianceReport& r = point.report;
        out << format_real(point.p) << ',' << format_real(point.q) << ',' << format_real(pair.p_comp())
            << ',' << format_real(pair.q_comp()) << ',' << format_real(r.a_pq) << ','
            << format_real(r.a_pcqc) << ',' << format_real(r.abs_diff) << ','
            << (r.pass ? "true" : "false") << "\n";
    }
}

void write_sweep_json(std::ostream& out, const std::vector<GridPoint>& grid)
{
    out << "[";
    bool first = true;
    for (const GridPoint& point : grid) {
        const ParamPair pair(point.p, point.q);
        const InvarianceReport& r = point.report;
        const Fields row = {{"p", point.p},
                            {"q", point.q},
                            {"p_comp", pair.p_comp()},
                            {"q_comp", pair.q_comp()},
                            {"a_pq", r.a_pq},
                            {"a_pcqc", r.a_pcqc},
                            {"abs_diff", r.abs_diff},
                            {"pass", r.pass}};
        out << (first ? "\n  " : ",\n  ");
        json_object(out, row, "  ");
        first = false;
    }
    out << (first ? "]\n" : "\n]\n");
}

} // namespace elliptic_lab
