#pragma once

// Two cross-Kerr coupled resonators in a truncated number basis.
// State (n1, n2) is stored at index n1 + N1 * n2, so for N1 = N2 = 2 the
// order is 00, 10, 01, 11, matching the qubit basis {0, 1, 2, d}.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qar/baths.hpp"
#include "qar/rate_matrix.hpp"

namespace qar {

struct ResonatorSystem {
    double eps1{1.0};
    double eps2{1.0};
    double delta_z{0.05};
    std::size_t n1{2}; // retained levels of resonator 1
    std::size_t n2{2};

    std::size_t dimension() const { return n1 * n2; }
    std::size_t index(std::size_t a, std::size_t b) const { return a + n1 * b; }
    double energy(std::size_t a, std::size_t b) const;
    Eigen::VectorXd energies() const;

    void validate() const;
};

struct ResonatorGenerator {
    RateMatrix full;
    RateMatrix cold_part; // contribution of bath C alone
};

// Photon-number-resolved rates: resonator 1 hops n1 -> n1+1 at
// eps1 + dz*n2 through L and R, resonator 2 hops at eps2 + dz*n1 through C.
// Hops above the top retained level are dropped.
ResonatorGenerator build_resonator_generator(const ResonatorSystem& sys, const BathSet& baths);

// Sum_n E(n) [L_C rho]_n, positive when bath C loses energy.
double resonator_heat_current_C(const ResonatorSystem& sys, const ResonatorGenerator& gen, const Eigen::VectorXd& rho);
double resonator_heat_current_C(const ResonatorSystem& sys, const BathSet& baths, const Eigen::VectorXd& rho);

struct ResonatorSolution {
    Eigen::VectorXd populations;
    double current_c{};
    double mean_n1{};
    double mean_n2{};
};

ResonatorSolution resonator_solve(const ResonatorSystem& sys, const BathSet& baths);

struct TruncationEntry {
    std::size_t n1{}, n2{};
    double current_c{};
    double increment{}; // |J(n1,n2) - J(n1-1,n2-1)| on the diagonal, else vs the
                        // previous n1 at the same n2; 0 for the first entry
};

// J_C for every (N1, N2) in [2, n_max]^2, ordered with N1 fastest.
std::vector<TruncationEntry> truncation_sweep(const ResonatorSystem& sys, const BathSet& baths, std::size_t n_max);

} // namespace qar
