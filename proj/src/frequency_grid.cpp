#include "qar/frequency_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qar/errors.hpp"

namespace qar {

FrequencyGrid::FrequencyGrid(double omega_min, double omega_max, std::size_t size)
    : lo_(omega_min), hi_(omega_max), m_(size)
{
    if (!(omega_min >= 0.0)) throw ResolutionError("grid: omega_min must be >= 0");
    if (!(omega_max > omega_min)) throw ResolutionError("grid: empty frequency window");
    if (size < 3) throw ResolutionError("grid: need at least 3 samples");
}

double narrowest_filter(const BathSet& baths)
{
    double w = std::abs(baths.left.coupling * baths.left.resonance);
    w = std::min(w, std::abs(baths.right.coupling * baths.right.resonance));
    w = std::min(w, std::abs(baths.cold.coupling * baths.cold.resonance));
    return w;
}

FrequencyGrid FrequencyGrid::for_baths(const BathSet& baths, std::size_t refine)
{
    baths.validate();
    if (refine == 0) throw ResolutionError("grid: refine must be >= 1");
    const double cutoff = std::max({baths.left.cutoff, baths.right.cutoff, baths.cold.cutoff});
    const double hi = 1.5 * cutoff;
    const double width = narrowest_filter(baths);
    if (!(width > 0.0)) throw ResolutionError("grid: filter width must be > 0");
    const auto intervals = static_cast<std::size_t>(std::ceil(hi / (width / 10.0)));
    return FrequencyGrid(0.0, hi, intervals * refine + 1);
}

std::vector<double> FrequencyGrid::samples() const
{
    std::vector<double> w(m_);
    for (std::size_t k = 0; k < m_; ++k) w[k] = (*this)[k];
    return w;
}

void FrequencyGrid::validate(const BathSet& baths) const
{
    const double cutoff = std::max({baths.left.cutoff, baths.right.cutoff, baths.cold.cutoff});
    if (hi_ < cutoff) throw ResolutionError("grid: omega_max below the largest cutoff");
    const double need = narrowest_filter(baths) / 10.0;
    if (spacing() > need * (1.0 + 1e-12))
        throw ResolutionError("grid: spacing " + std::to_string(spacing()) + " exceeds " + std::to_string(need));
}

} // namespace qar
