#pragma once

// Bosonic reservoirs seen through a Lorentzian energy filter.
//
// Units: hbar = k_B = 1, energies and temperatures in units of the reference
// temperature k_B T.  Heat currents come out in (k_B T)^2 / hbar.

#include <string_view>

namespace qar {

enum class BathLabel { L, R, C };

std::string_view to_string(BathLabel label);

struct BathSpec {
    BathLabel label{BathLabel::L};
    double temperature{1.0}; // T_eta
    double coupling{0.02};   // Gamma_eta, dimensionless
    double resonance{2.0};   // Omega_eta
    double cutoff{20.0};     // eps_c, support is 0 < omega < cutoff

    // Throws DomainError unless T > 0, Gamma > 0, eps_c > 0.
    void validate() const;
};

// The three reservoirs of the refrigerator: L and R on system 1, C on system 2.
struct BathSet {
    BathSpec left{BathLabel::L};
    BathSpec right{BathLabel::R};
    BathSpec cold{BathLabel::C};

    void validate() const;
};

/// Bose-Einstein occupation 1/(exp(omega/T) - 1). Requires omega > 0, T > 0.
double bose_occupation(double omega, double temperature);

/// Filtered spectral density K(omega) = G(w) / ((w - Omega)^2 + G(w)^2) with
/// G(w) = Gamma*w on 0 < w < eps_c, and K = 0 elsewhere.
double spectral_density(double omega, const BathSpec& bath);

/// Absorption rate K(w) n(w); zero for w <= 0.
double rate_in(double omega, const BathSpec& bath);

/// Emission rate K(w) (1 + n(w)); zero for w <= 0.
double rate_out(double omega, const BathSpec& bath);

/// Rate for a system transition from an eigenstate with energy `from` to one
/// with energy `to`: absorption if the system gains energy, emission otherwise.
double transition_rate(double from, double to, const BathSpec& bath);

/// lim_{w -> 0+} K(w) n(w) = Gamma T / Omega^2 (finite since K is linear in w).
double absorption_weight_at_zero(const BathSpec& bath);

} // namespace qar
