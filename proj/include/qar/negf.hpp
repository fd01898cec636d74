#pragma once

// Keldysh Green's functions for the cross-Kerr coupled resonators on a
// uniform frequency grid: Hartree mean field for the retarded propagators,
// tunneling self-energies from the filtered baths, and the second-order
// exchange-correlation bubble that carries the bath-C heat current.

#include <complex>
#include <cstddef>
#include <vector>

#include "qar/baths.hpp"
#include "qar/frequency_grid.hpp"

namespace qar {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

struct NegfSystem {
    double eps1{2.0};
    double eps2{2.0};
    double delta_z{0.2};

    void validate() const;
};

struct NegfOptions {
    double width_factor{2.0};  // tunneling width = width_factor * K
    bool lamb_shift{false};    // add the principal-value real part to Sigma^r
    double mixing{0.5};
    double tolerance{1e-8};
    std::size_t max_iterations{200};
    std::size_t grid_refine{1};
    double window_tolerance{1e-6};

    void validate() const;
};

struct BathSelfEnergy {
    RVec width;       // Gamma_tun(w) >= 0
    RVec absorption;  // Gamma_tun(w) n(w), finite limit at w = 0
    CVec retarded;    // Lambda - i Gamma_tun / 2
    CVec lesser;      // -i Gamma_tun n
    CVec greater;     // -i Gamma_tun (1 + n)
};

// Throws ResolutionError if the grid cannot resolve this bath's filter.
BathSelfEnergy tunneling_self_energy(const BathSpec& bath, const FrequencyGrid& grid, double width_factor = 1.0,
                                     bool lamb_shift = true);

// Real part of Sigma^r for a width Gamma_tun: (1/2pi) P int Gamma_tun(w')/(w - w').
RVec kramers_kronig_shift(const RVec& width);

// G^r = 1 / (w - eps - dz * n_other - Sigma^r).  `support` is the upper edge
// of the bath window; an undamped sample strictly inside (0, support) throws
// BroadeningError.
CVec mean_field_retarded(double eps, double delta_z, double n_other, const CVec& sigma_r, const FrequencyGrid& grid,
                         double support);

struct LesserGreater {
    CVec lesser;
    CVec greater;
};

// G^<> = G^r Sigma^<> G^a samplewise.
LesserGreater keldysh_lesser_greater(const CVec& g_r, const CVec& sigma_lesser, const CVec& sigma_greater);

struct XcSelfEnergy {
    CVec lesser;
    CVec greater;
    double window_leak{}; // largest time-domain tail relative to the peak
};

// Bubble self-energy of resonator j from the pair propagators of j and k:
// Sigma^<>_xc,j(t) = -dz^2 G^<>_j(t) G^<>_k(t) G^><_k(-t).  Throws
// WindowError if the time-domain tails reach the window edge.
XcSelfEnergy xc_self_energy(const CVec& g_lesser_j, const CVec& g_greater_j, const CVec& g_lesser_k,
                            const CVec& g_greater_k, double delta_z, const FrequencyGrid& grid,
                            double window_tolerance = 1e-6);

struct SelfConsistentState {
    double n1{};
    double n2{};
    std::size_t iterations{};
    double residual{};
    std::vector<double> residual_history;
};

struct ResonatorFunctions {
    CVec retarded;
    CVec lesser;
    CVec greater;

    CVec advanced() const;
    RVec spectral() const; // -2 Im G^r
};

struct SpectralFunctionGrid {
    FrequencyGrid grid;
    BathSelfEnergy left, right, cold;
    ResonatorFunctions r1, r2; // tunneling self-energies only
    XcSelfEnergy xc2;
};

struct NegfResult {
    SelfConsistentState state;
    SpectralFunctionGrid functions;
};

// Fixed point of the Hartree occupations with linear mixing, starting from
// the free modes.  Throws ConvergenceError after max_iterations.
NegfResult self_consistent_loop(const NegfSystem& sys, const BathSet& baths, const FrequencyGrid& grid,
                                const NegfOptions& opt);

NegfResult negf_solve(const NegfSystem& sys, const BathSet& baths, const NegfOptions& opt = {});

// Heat leaving bath C through the xc channel (positive = cooling).
double heat_current_C_negf(const NegfResult& result);

double occupation(const CVec& g_lesser, const FrequencyGrid& grid);
double spectral_weight(const CVec& g_r, const FrequencyGrid& grid);

} // namespace qar
