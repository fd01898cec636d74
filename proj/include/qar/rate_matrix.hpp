#pragma once

// Classical master equation dp/dt = W p over a finite set of populations.

#include <cstddef>

#include <Eigen/Dense>

namespace qar {

class RateMatrix {
public:
    explicit RateMatrix(std::size_t n);

    std::size_t size() const { return static_cast<std::size_t>(w_.rows()); }

    // Adds a jump from -> to with the given non-negative rate; keeps the
    // column sums at zero by construction.
    void add_transition(std::size_t from, std::size_t to, double rate);

    // Adds a forward and a backward jump between two states.
    void add_pair(std::size_t a, std::size_t b, double rate_ab, double rate_ba);

    const Eigen::MatrixXd& generator() const { return w_; }

    double rate(std::size_t from, std::size_t to) const { return w_(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)); }

    // Largest |column sum|; zero up to rounding for a valid generator.
    double max_column_sum() const;

    // Largest total escape rate max_i |W_ii|, the scale for rounding checks.
    double scale() const;

private:
    Eigen::MatrixXd w_;
};

// Stationary distribution of W. Requires exactly one closed communicating
// class; states outside it get zero weight. Throws DegenerateGeneratorError
// otherwise. Entries below `clamp` in magnitude are clamped to zero.
Eigen::VectorXd steady_state(const RateMatrix& w, double clamp = 1e-12);

} // namespace qar
