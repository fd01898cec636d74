#pragma once

#include <cstddef>
#include <vector>

#include "qar/baths.hpp"

namespace qar {

// Uniform grid omega_k = omega_min + k * spacing, k = 0 .. size-1.
class FrequencyGrid {
public:
    FrequencyGrid(double omega_min, double omega_max, std::size_t size);

    // [0, 1.5 * max cutoff] with spacing <= min(Gamma * Omega) / 10.
    // `refine` multiplies the number of intervals.
    static FrequencyGrid for_baths(const BathSet& baths, std::size_t refine = 1);

    double omega_min() const { return lo_; }
    double omega_max() const { return hi_; }
    std::size_t size() const { return m_; }
    double spacing() const { return (hi_ - lo_) / static_cast<double>(m_ - 1); }
    double operator[](std::size_t k) const { return lo_ + spacing() * static_cast<double>(k); }
    std::vector<double> samples() const;

    // Throws ResolutionError if the grid misses a cutoff or cannot resolve
    // the narrowest filter.
    void validate(const BathSet& baths) const;

private:
    double lo_;
    double hi_;
    std::size_t m_;
};

double narrowest_filter(const BathSet& baths);

} // namespace qar
