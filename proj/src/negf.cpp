#include "qar/negf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qar/errors.hpp"
#include "qar/spectral_ops.hpp"

namespace qar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

RVec add(const RVec& a, const RVec& b)
{
    RVec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

CVec add(const CVec& a, const CVec& b)
{
    CVec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

// i G^< and i G^> are real and non-negative for bosons.
RVec weight(const CVec& g)
{
    RVec out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = -g[k].imag();
    return out;
}

double tail_ratio(const RVec& f)
{
    const RVec mag = time_domain_magnitude(f);
    const double peak = *std::max_element(mag.begin(), mag.end());
    if (peak == 0.0) return 0.0;
    // Outer quarter of the window around |tau| = half period.
    const std::size_t l = mag.size();
    double edge = 0.0;
    for (std::size_t k = 3 * l / 8; k <= 5 * l / 8; ++k) edge = std::max(edge, mag[k]);
    return edge / peak;
}

} // namespace

void NegfSystem::validate() const
{
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw DomainError("negf: eps1, eps2 must be > 0");
    if (!(delta_z >= 0.0)) throw DomainError("negf: delta_z must be >= 0");
}

void NegfOptions::validate() const
{
    if (!(mixing > 0.0 && mixing <= 1.0)) throw DomainError("negf: mixing must be in (0, 1]");
    if (!(tolerance > 0.0)) throw DomainError("negf: tolerance must be > 0");
    if (max_iterations == 0) throw DomainError("negf: max_iterations must be >= 1");
    if (!(width_factor > 0.0)) throw DomainError("negf: width_factor must be > 0");
    if (grid_refine == 0) throw DomainError("negf: grid_refine must be >= 1");
}

RVec kramers_kronig_shift(const RVec& width)
{
    RVec lam = principal_value(width);
    for (double& v : lam) v /= kTwoPi;
    return lam;
}

BathSelfEnergy tunneling_self_energy(const BathSpec& bath, const FrequencyGrid& grid, double width_factor,
                                     bool lamb_shift)
{
    bath.validate();
    const double need = std::abs(bath.coupling * bath.resonance) / 10.0;
    if (grid.spacing() > need * (1.0 + 1e-12))
        throw ResolutionError("bath " + std::string(to_string(bath.label)) + ": grid spacing too coarse for the filter");

    const std::size_t m = grid.size();
    BathSelfEnergy s;
    s.width.resize(m);
    s.absorption.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double w = grid[k];
        s.width[k] = width_factor * spectral_density(w, bath);
        if (w > 0.0) s.absorption[k] = s.width[k] > 0.0 ? s.width[k] * bose_occupation(w, bath.temperature) : 0.0;
        else s.absorption[k] = width_factor * absorption_weight_at_zero(bath);
    }
    const RVec lam = lamb_shift ? kramers_kronig_shift(s.width) : RVec(m, 0.0);
    s.retarded.resize(m);
    s.lesser.resize(m);
    s.greater.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        s.retarded[k] = cplx(lam[k], -0.5 * s.width[k]);
        s.lesser[k] = -kI * s.absorption[k];
        s.greater[k] = -kI * (s.width[k] + s.absorption[k]);
    }
    return s;
}

CVec mean_field_retarded(double eps, double delta_z, double n_other, const CVec& sigma_r, const FrequencyGrid& grid,
                         double support)
{
    const double level = eps + delta_z * n_other;
    CVec g(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = grid[k];
        if (sigma_r[k].imag() == 0.0 && w > 0.0 && w < support)
            throw BroadeningError("mean_field_retarded: no broadening at omega = " + std::to_string(w));
        const cplx d = w - level - sigma_r[k];
        if (d == cplx(0.0, 0.0)) throw BroadeningError("mean_field_retarded: pole on the grid");
        g[k] = 1.0 / d;
    }
    return g;
}

LesserGreater keldysh_lesser_greater(const CVec& g_r, const CVec& sigma_lesser, const CVec& sigma_greater)
{
    LesserGreater out{CVec(g_r.size()), CVec(g_r.size())};
    for (std::size_t k = 0; k < g_r.size(); ++k) {
        const double g2 = std::norm(g_r[k]);
        out.lesser[k] = g2 * sigma_lesser[k];
        out.greater[k] = g2 * sigma_greater[k];
    }
    return out;
}

XcSelfEnergy xc_self_energy(const CVec& g_lesser_j, const CVec& g_greater_j, const CVec& g_lesser_k,
                            const CVec& g_greater_k, double delta_z, const FrequencyGrid& grid,
                            double window_tolerance)
{
    const RVec aj = weight(g_lesser_j);
    const RVec bj = weight(g_greater_j);
    const RVec ak = weight(g_lesser_k);
    const RVec bk = weight(g_greater_k);

    XcSelfEnergy xc;
    for (const RVec* f : {&aj, &bj, &ak, &bk}) xc.window_leak = std::max(xc.window_leak, tail_ratio(*f));
    if (xc.window_leak > window_tolerance)
        throw WindowError("xc_self_energy: time-domain tail " + std::to_string(xc.window_leak) + " of peak at the window edge");

    const double h = grid.spacing() / kTwoPi;
    RVec p_lesser = cross_correlation(ak, bk);
    RVec p_greater = cross_correlation(bk, ak);
    for (double& v : p_lesser) v *= h;
    for (double& v : p_greater) v *= h;
    const RVec s_lesser = wrapped_convolution(aj, p_lesser);
    const RVec s_greater = wrapped_convolution(bj, p_greater);

    const double pre = delta_z * delta_z * h;
    xc.lesser.resize(aj.size());
    xc.greater.resize(aj.size());
    for (std::size_t k = 0; k < aj.size(); ++k) {
        // Round-off from the transform can leave tiny negative values.
        xc.lesser[k] = -kI * std::max(0.0, pre * s_lesser[k]);
        xc.greater[k] = -kI * std::max(0.0, pre * s_greater[k]);
    }
    return xc;
}

CVec ResonatorFunctions::advanced() const
{
    CVec a(retarded.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::conj(retarded[k]);
    return a;
}

RVec ResonatorFunctions::spectral() const
{
    RVec a(retarded.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = -2.0 * retarded[k].imag();
    return a;
}

double occupation(const CVec& g_lesser, const FrequencyGrid& grid)
{
    return trapezoid(weight(g_lesser), grid.spacing()) / kTwoPi;
}

double spectral_weight(const CVec& g_r, const FrequencyGrid& grid)
{
    RVec a(g_r.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = -2.0 * g_r[k].imag();
    return trapezoid(a, grid.spacing()) / kTwoPi;
}

NegfResult self_consistent_loop(const NegfSystem& sys, const BathSet& baths, const FrequencyGrid& grid,
                                const NegfOptions& opt)
{
    sys.validate();
    opt.validate();
    baths.validate();
    grid.validate(baths);

    SpectralFunctionGrid f{grid, {}, {}, {}, {}, {}, {}};
    f.left = tunneling_self_energy(baths.left, grid, opt.width_factor, opt.lamb_shift);
    f.right = tunneling_self_energy(baths.right, grid, opt.width_factor, opt.lamb_shift);
    f.cold = tunneling_self_energy(baths.cold, grid, opt.width_factor, opt.lamb_shift);

    const CVec sigma1_r = add(f.left.retarded, f.right.retarded);
    const CVec sigma1_l = add(f.left.lesser, f.right.lesser);
    const CVec sigma1_g = add(f.left.greater, f.right.greater);
    const RVec absorb1 = add(f.left.absorption, f.right.absorption);
    const double support1 = std::min(baths.left.cutoff, baths.right.cutoff);
    const double support2 = baths.cold.cutoff;

    auto occupations = [&](double n1, double n2) {
        const CVec g1 = mean_field_retarded(sys.eps1, sys.delta_z, n2, sigma1_r, grid, support1);
        const CVec g2 = mean_field_retarded(sys.eps2, sys.delta_z, n1, f.cold.retarded, grid, support2);
        RVec a1(grid.size()), a2(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            a1[k] = std::norm(g1[k]) * absorb1[k];
            a2[k] = std::norm(g2[k]) * f.cold.absorption[k];
        }
        return std::pair{trapezoid(a1, grid.spacing()) / kTwoPi, trapezoid(a2, grid.spacing()) / kTwoPi};
    };

    SelfConsistentState st;
    auto [n1, n2] = occupations(0.0, 0.0);
    bool converged = false;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        const auto [m1, m2] = occupations(n1, n2);
        const double res = std::max(std::abs(m1 - n1), std::abs(m2 - n2));
        st.residual_history.push_back(res);
        st.iterations = it;
        st.residual = res;
        if (res < opt.tolerance) {
            n1 = m1;
            n2 = m2;
            converged = true;
            break;
        }
        n1 = (1.0 - opt.mixing) * n1 + opt.mixing * m1;
        n2 = (1.0 - opt.mixing) * n2 + opt.mixing * m2;
    }
    if (!converged)
        throw ConvergenceError("negf: no convergence after " + std::to_string(opt.max_iterations) + " iterations",
                               st.residual_history);
    st.n1 = n1;
    st.n2 = n2;

    f.r1.retarded = mean_field_retarded(sys.eps1, sys.delta_z, n2, sigma1_r, grid, support1);
    f.r2.retarded = mean_field_retarded(sys.eps2, sys.delta_z, n1, f.cold.retarded, grid, support2);
    auto lg1 = keldysh_lesser_greater(f.r1.retarded, sigma1_l, sigma1_g);
    auto lg2 = keldysh_lesser_greater(f.r2.retarded, f.cold.lesser, f.cold.greater);
    f.r1.lesser = std::move(lg1.lesser);
    f.r1.greater = std::move(lg1.greater);
    f.r2.lesser = std::move(lg2.lesser);
    f.r2.greater = std::move(lg2.greater);
    f.xc2 = xc_self_energy(f.r2.lesser, f.r2.greater, f.r1.lesser, f.r1.greater, sys.delta_z, grid,
                           opt.window_tolerance);
    return NegfResult{st, std::move(f)};
}

NegfResult negf_solve(const NegfSystem& sys, const BathSet& baths, const NegfOptions& opt)
{
    return self_consistent_loop(sys, baths, FrequencyGrid::for_baths(baths, opt.grid_refine), opt);
}

double heat_current_C_negf(const NegfResult& result)
{
    const SpectralFunctionGrid& f = result.functions;
    const std::size_t m = f.grid.size();
    RVec integrand(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double s_lesser = -f.xc2.lesser[k].imag();
        const double s_greater = -f.xc2.greater[k].imag();
        const double emit = f.cold.width[k] + f.cold.absorption[k];
        integrand[k] = f.grid[k] * std::norm(f.r2.retarded[k]) * (s_greater * f.cold.absorption[k] - s_lesser * emit);
    }
    return trapezoid(integrand, f.grid.spacing()) / kTwoPi;
}

} // namespace qar
