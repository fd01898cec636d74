#pragma once

// Run configuration for batch sweeps, read from YAML.  The schema is
// documented in README.md.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qar/baths.hpp"
#include "qar/negf.hpp"

namespace qar {

enum class SolverKind { QubitZZ, QubitLocal, QubitGlobal, ResonatorMe, Negf };

std::string to_string(SolverKind k);

enum class BiasScheme {
    Symmetric, // T_L = T + dT, T_R = T, T_C = T - dT
    Hot,       // T_L = T + dT, T_R = T, T_C = T
};

// Linear expression in the system parameters, e.g. "eps1 + delta_z" or
// "2*eps2 - 0.5".  Variables: eps1, eps2, delta_z, delta_x.
class ParamExpr {
public:
    ParamExpr() = default;
    explicit ParamExpr(double value) : constant_(value) {}
    static ParamExpr parse(const std::string& text);

    double eval(double eps1, double eps2, double delta_z, double delta_x) const;
    const std::string& text() const { return text_; }

private:
    double constant_{0.0};
    double c_eps1_{0.0}, c_eps2_{0.0}, c_dz_{0.0}, c_dx_{0.0};
    std::string text_;
};

struct BathTemplate {
    double coupling{0.02};
    ParamExpr resonance{2.0};
    double cutoff{20.0};
};

struct Axis {
    std::string param;
    double start{0.0};
    double stop{0.0};
    std::size_t steps{0};

    std::vector<double> values() const;
};

// Curves of one figure: each entry assigns a value to every listed parameter.
struct Series {
    std::vector<std::string> params;
    std::vector<std::vector<double>> values;
};

// Full parameter point; the sweep overwrites one or two of these fields.
struct Point {
    double eps1{2.0};
    double eps2{2.0};
    double delta_z{0.0};
    double delta_x{0.0};
    double n1{2};
    double n2{2};
    double temperature{1.0};
    double delta_t{0.0};
    double gamma_l{0.02};

    void set(const std::string& param, double value);
};

struct RunConfig {
    std::string name;
    std::string description;
    SolverKind solver{SolverKind::QubitZZ};
    Point base;
    BiasScheme scheme{BiasScheme::Symmetric};
    BathTemplate left, right, cold;
    Axis sweep;
    std::optional<Series> series;
    NegfOptions negf;
    std::string output;

    BathSet baths_at(const Point& p) const;
};

// Parameters that may be swept or used as a series.
const std::vector<std::string>& sweepable_parameters();

// Throws ConfigError on schema or range problems, IoError if unreadable.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& yaml_text);

// Static checks that do not need a solve.  Throws ConfigError.
void validate(const RunConfig& cfg);

} // namespace qar
