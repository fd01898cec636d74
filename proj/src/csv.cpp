#include "qar/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "qar/errors.hpp"

namespace qar {

std::string format_number(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (r.ec != std::errc{}) throw IoError("format_number: conversion failed");
    return std::string(buf, r.ptr);
}

namespace {

// Errors are free text; keep each on one CSV field.
std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else if (c == '\n' || c == '\r') q += ' ';
        else q += c;
    }
    return q + "\"";
}

} // namespace

void emit_csv(const SweepResult& result, std::ostream& out)
{
    out << result.axis_name << ",J_C";
    for (const auto& s : result.series_names) out << ',' << s;
    for (const auto& d : result.diagnostic_names) out << ',' << d;
    out << ",error\n";
    for (const auto& row : result.rows) {
        out << format_number(row.axis) << ',';
        if (row.current_c) out << format_number(*row.current_c);
        for (std::size_t k = 0; k < result.series_names.size(); ++k) {
            out << ',';
            if (k < row.series.size()) out << format_number(row.series[k]);
        }
        for (std::size_t k = 0; k < result.diagnostic_names.size(); ++k) {
            out << ',';
            if (k < row.diagnostics.size()) out << format_number(row.diagnostics[k]);
        }
        out << ',' << quote(row.error) << '\n';
    }
}

void write_csv(const SweepResult& result, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace qar
