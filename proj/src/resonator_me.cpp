#include "qar/resonator_me.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "qar/errors.hpp"

namespace qar {

double ResonatorSystem::energy(std::size_t a, std::size_t b) const
{
    const double x = static_cast<double>(a);
    const double y = static_cast<double>(b);
    return eps1 * x + eps2 * y + delta_z * x * y;
}

Eigen::VectorXd ResonatorSystem::energies() const
{
    Eigen::VectorXd e(static_cast<Eigen::Index>(dimension()));
    for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t a = 0; a < n1; ++a) e(static_cast<Eigen::Index>(index(a, b))) = energy(a, b);
    return e;
}

void ResonatorSystem::validate() const
{
    if (n1 < 2 || n2 < 2) throw DomainError("resonator: truncation must keep at least 2 levels");
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw DomainError("resonator: eps1, eps2 must be > 0");
    if (!(delta_z >= 0.0)) throw DomainError("resonator: delta_z must be >= 0");
}

ResonatorGenerator build_resonator_generator(const ResonatorSystem& sys, const BathSet& baths)
{
    sys.validate();
    baths.validate();
    ResonatorGenerator g{RateMatrix(sys.dimension()), RateMatrix(sys.dimension())};
    for (std::size_t b = 0; b < sys.n2; ++b) {
        for (std::size_t a = 0; a < sys.n1; ++a) {
            const std::size_t here = sys.index(a, b);
            if (a + 1 < sys.n1) {
                const double w = sys.eps1 + sys.delta_z * static_cast<double>(b);
                const double m = static_cast<double>(a + 1);
                const double up = rate_in(w, baths.left) + rate_in(w, baths.right);
                const double down = rate_out(w, baths.left) + rate_out(w, baths.right);
                g.full.add_pair(here, sys.index(a + 1, b), m * up, m * down);
            }
            if (b + 1 < sys.n2) {
                const double w = sys.eps2 + sys.delta_z * static_cast<double>(a);
                const double m = static_cast<double>(b + 1);
                const double up = m * rate_in(w, baths.cold);
                const double down = m * rate_out(w, baths.cold);
                g.full.add_pair(here, sys.index(a, b + 1), up, down);
                g.cold_part.add_pair(here, sys.index(a, b + 1), up, down);
            }
        }
    }
    return g;
}

double resonator_heat_current_C(const ResonatorSystem& sys, const ResonatorGenerator& gen, const Eigen::VectorXd& rho)
{
    // Pairwise flux form of E . (L_C rho); avoids cancellation between
    // large diagonal and off-diagonal terms.
    const Eigen::MatrixXd& w = gen.cold_part.generator();
    const Eigen::VectorXd e = sys.energies();
    double j = 0.0;
    for (Eigen::Index from = 0; from < w.cols(); ++from)
        for (Eigen::Index to = 0; to < w.rows(); ++to)
            if (to != from && w(to, from) > 0.0) j += (e(to) - e(from)) * w(to, from) * rho(from);
    return j;
}

double resonator_heat_current_C(const ResonatorSystem& sys, const BathSet& baths, const Eigen::VectorXd& rho)
{
    return resonator_heat_current_C(sys, build_resonator_generator(sys, baths), rho);
}

ResonatorSolution resonator_solve(const ResonatorSystem& sys, const BathSet& baths)
{
    const ResonatorGenerator g = build_resonator_generator(sys, baths);
    ResonatorSolution s;
    s.populations = steady_state(g.full);
    s.current_c = resonator_heat_current_C(sys, g, s.populations);
    for (std::size_t b = 0; b < sys.n2; ++b)
        for (std::size_t a = 0; a < sys.n1; ++a) {
            const double p = s.populations(static_cast<Eigen::Index>(sys.index(a, b)));
            s.mean_n1 += static_cast<double>(a) * p;
            s.mean_n2 += static_cast<double>(b) * p;
        }
    return s;
}

std::vector<TruncationEntry> truncation_sweep(const ResonatorSystem& sys, const BathSet& baths, std::size_t n_max)
{
    if (n_max < 2) throw DomainError("truncation_sweep: n_max must be >= 2");
    std::map<std::pair<std::size_t, std::size_t>, double> j;
    std::vector<TruncationEntry> out;
    for (std::size_t b = 2; b <= n_max; ++b) {
        for (std::size_t a = 2; a <= n_max; ++a) {
            ResonatorSystem s = sys;
            s.n1 = a;
            s.n2 = b;
            TruncationEntry t{a, b, resonator_solve(s, baths).current_c, 0.0};
            j[{a, b}] = t.current_c;
            if (a == b && a > 2) t.increment = std::abs(t.current_c - j.at({a - 1, b - 1}));
            else if (a > 2) t.increment = std::abs(t.current_c - j.at({a - 1, b}));
            else if (b > 2) t.increment = std::abs(t.current_c - j.at({a, b - 1}));
            out.push_back(t);
        }
    }
    return out;
}

} // namespace qar
