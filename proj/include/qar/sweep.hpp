#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qar/config.hpp"

namespace qar {

struct SweepRow {
    double axis{};
    std::vector<double> series;      // one per SweepResult::series_names
    std::optional<double> current_c; // empty when the point failed
    std::vector<double> diagnostics; // one per SweepResult::diagnostic_names
    std::string error;
};

struct SweepResult {
    std::string axis_name;
    std::vector<std::string> series_names;
    std::vector<std::string> diagnostic_names;
    std::vector<SweepRow> rows; // series-major, axis order within a series

    std::size_t failures() const;
};

struct PointResult {
    double current_c{};
    std::vector<double> diagnostics;
};

// One solver evaluation at a fully specified point.  Throws on solver errors.
PointResult evaluate_point(const RunConfig& cfg, const Point& p);

std::vector<std::string> diagnostic_names(SolverKind k);

// Evaluates every (series, axis) point, `jobs` at a time.  Per-point errors
// land in the row; the output does not depend on `jobs`.
SweepResult run_sweep(const RunConfig& cfg, std::size_t jobs = 1);

} // namespace qar
