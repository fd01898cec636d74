#pragma once

// Quadrature and transform helpers on a uniform frequency grid.

#include <cstddef>
#include <vector>

namespace qar {

double trapezoid(const std::vector<double>& f, double h);

// P int dw' f(w') / (w_i - w') by the odd-offset (Maclaurin) rule:
// sum over j with i - j odd of 2 f_j / (i - j).  Spacing cancels.
std::vector<double> principal_value(const std::vector<double>& f);

// c[d] = sum_m x[m + d] y[m] for |d| < M, returned as a length-2M array
// indexed by d mod 2M (entry M is unused and zero).
std::vector<double> cross_correlation(const std::vector<double>& x, const std::vector<double>& y);

// out[n] = sum_{|d| < M} x[n - d] c[d] for 0 <= n < M, with x zero outside
// [0, M) and c in the wrapped layout of cross_correlation.
std::vector<double> wrapped_convolution(const std::vector<double>& x, const std::vector<double>& c);

// Time-domain image |f(tau_k)|, k in [0, 2M), of the even extension f(|w|)
// sampled on the doubled window.
std::vector<double> time_domain_magnitude(const std::vector<double>& f);

} // namespace qar
