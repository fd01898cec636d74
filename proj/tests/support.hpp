#pragma once

// Parameter sets shared by the unit and acceptance tests.

#include "qar/baths.hpp"

namespace qar::testing {

// Filters tuned to the cooling cycle: Omega_L = eps1, Omega_R = eps1 + dz,
// Omega_C = eps2 + dz.
inline BathSet tuned_baths(double eps1, double eps2, double dz, double gl, double gr, double gc, double cutoff,
                           double tl, double tr, double tc)
{
    BathSet b;
    b.left = {BathLabel::L, tl, gl, eps1, cutoff};
    b.right = {BathLabel::R, tr, gr, eps1 + dz, cutoff};
    b.cold = {BathLabel::C, tc, gc, eps2 + dz, cutoff};
    return b;
}

// T_L = T + dT, T_R = T, T_C = T - dT with T = 1.
inline BathSet symmetric_bias(double eps1, double eps2, double dz, double gl, double gr, double gc, double cutoff,
                              double dt)
{
    return tuned_baths(eps1, eps2, dz, gl, gr, gc, cutoff, 1.0 + dt, 1.0, 1.0 - dt);
}

inline BathSet fig3(double dz, double dt) { return symmetric_bias(2.0, 2.0, dz, 0.02, 0.08, 0.06, 20.0, dt); }
inline BathSet fig4(double eps1, double dt) { return symmetric_bias(eps1, 2.0, 0.1, 0.02, 0.08, 0.06, 10.0, dt); }
inline BathSet fig5(double dz, double dt) { return symmetric_bias(2.0, 2.1, dz, 0.02, 0.08, 0.06, 10.0, dt); }
inline BathSet fig7(double dz, double dt) { return symmetric_bias(1.0, 1.0, dz, 0.02, 0.08, 0.06, 10.0, dt); }
inline BathSet fig8(double dz, double dt) { return symmetric_bias(1.0, 1.0, dz, 0.02, 0.08, 0.06, 20.0, dt); }

// T_L = T + dT, T_R = T_C = T.
inline BathSet fig9(double gl, double dz, double dt)
{
    return tuned_baths(2.0, 2.0, dz, gl, 0.02, 0.02, 7.0, 1.0 + dt, 1.0, 1.0);
}

} // namespace qar::testing
