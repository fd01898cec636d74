#pragma once

#include <ostream>
#include <string>

#include "qar/sweep.hpp"

namespace qar {

// Shortest general-format text with 12 significant digits.
std::string format_number(double v);

// Header row then one line per row, LF terminated.  Columns: axis, J_C,
// series..., diagnostics..., error.
void emit_csv(const SweepResult& result, std::ostream& out);

// Throws IoError if the file cannot be written.
void write_csv(const SweepResult& result, const std::string& path);

} // namespace qar
