#pragma once

// Two coupled qubits, basis {0, 1, 2, d}: 0 = both ground, 1 = qubit 1
// excited, 2 = qubit 2 excited, d = both excited.  Qubit 1 talks to baths L
// and R, qubit 2 to bath C.

#include <array>

#include <Eigen/Dense>

#include "qar/baths.hpp"
#include "qar/rate_matrix.hpp"

namespace qar {

inline constexpr std::size_t kState0 = 0;
inline constexpr std::size_t kState1 = 1;
inline constexpr std::size_t kState2 = 2;
inline constexpr std::size_t kStateD = 3;

struct QubitSystem {
    double eps1{2.0};
    double eps2{2.0};
    double delta_z{0.0};
    double delta_x{0.0};

    double eps_d() const { return eps1 + eps2 + delta_z; }
    std::array<double, 4> energies() const { return {0.0, eps1, eps2, eps_d()}; }

    // eps1 may be negative (level inversion); eps2 > 0 and delta_z >= 0.
    void validate() const;
};

// Rates contributed by one bath; rXY is the rate for X -> Y.  A bath that
// does not drive a channel leaves both directions at zero.
struct ChannelRates {
    double r01{}, r10{};
    double r2d{}, rd2{};
    double r02{}, r20{};
    double r1d{}, rd1{};

    ChannelRates& operator+=(const ChannelRates& o);
};

struct QubitRates {
    ChannelRates left, right, cold;

    ChannelRates total() const;
    const ChannelRates& of(BathLabel label) const;
};

// Sequential rates for the ZZ-coupled qubits: 0<->1 at eps1 and 2<->d at
// eps1 + dz through L and R; 0<->2 at eps2 and 1<->d at eps2 + dz through C.
QubitRates build_rates_zz(const QubitSystem& sys, const BathSet& baths);

RateMatrix generator(const QubitRates& rates);

// Heat current leaving bath `label` (positive = bath loses energy).
double heat_current(const QubitSystem& sys, const QubitRates& rates, BathLabel label, const Eigen::Vector4d& p);

double heat_current_C_zz(const QubitSystem& sys, const QubitRates& rates, const Eigen::Vector4d& p);
double heat_current_C_zz(const QubitSystem& sys, const BathSet& baths, const Eigen::Vector4d& p);

struct CoolingCondition {
    bool general{false}; // sign of the 0->1->d->2->0 cycle flux, exact
    bool optimal{false}; // perfect filters
    bool simple{false};  // perfect filters and symmetric bias: beta_C dz < beta_L eps1
};

CoolingCondition cooling_condition(const QubitSystem& sys, const BathSet& baths, const QubitRates& rates);
CoolingCondition cooling_condition(const QubitSystem& sys, const BathSet& baths);

// Leading small-(dz, dT) current for eps1 = eps2 = eps and a common filter
// `shape` for all three baths (its temperature is ignored).  Bias convention
// T_L = T + dT, T_R = T, T_C = T - dT.
double jc_perturbative(double eps, double delta_z, double delta_t, double temperature, const BathSpec& shape);

struct QubitSolution {
    Eigen::Vector4d populations; // {0,1,2,d}, or {0,+,-,d} for the global solver
    double current_l{};
    double current_r{};
    double current_c{};
};

// Delta_x must be zero.
QubitSolution solve_zz(const QubitSystem& sys, const BathSet& baths);

// Local dissipators plus the adiabatically eliminated 1-2 coherence, which
// acts as a symmetric exchange rate between populations 1 and 2.
QubitSolution local_me_solve(const QubitSystem& sys, const BathSet& baths);

double local_exchange_rate(const QubitSystem& sys, const QubitRates& rates);

// Secular master equation in the eigenbasis {0, +, -, d} of the system
// Hamiltonian.
struct GlobalBasis {
    double theta{};   // |+> = cos(theta)|1> + sin(theta)|2>, |-> = sin(theta)|1> - cos(theta)|2>
    double e_plus{};
    double e_minus{};
};

GlobalBasis global_basis(const QubitSystem& sys);

QubitSolution global_me_solve(const QubitSystem& sys, const BathSet& baths);

} // namespace qar
