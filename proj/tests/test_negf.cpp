#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qar/errors.hpp"
#include "qar/negf.hpp"
#include "qar/spectral_ops.hpp"
#include "support.hpp"

using namespace qar;
using namespace qar::testing;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t nearest(const FrequencyGrid& g, double w)
{
    return static_cast<std::size_t>(std::lround((w - g.omega_min()) / g.spacing()));
}

double peak_location(const RVec& a, const FrequencyGrid& g)
{
    std::size_t k = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] > a[k]) k = i;
    return g[k];
}

} // namespace

TEST_CASE("grid construction and resolution")
{
    const BathSet b = fig9(0.01, 0.2, 0.3);
    const FrequencyGrid g = FrequencyGrid::for_baths(b);
    CHECK(g.omega_min() == 0.0);
    CHECK(g.omega_max() == doctest::Approx(10.5));
    CHECK(g.spacing() <= 0.01 * 2.0 / 10.0 + 1e-15);
    CHECK_NOTHROW(g.validate(b));
    const FrequencyGrid coarse(0.0, 10.5, 100);
    CHECK_THROWS_AS(coarse.validate(b), ResolutionError);
    CHECK_THROWS_AS(tunneling_self_energy(b.left, coarse), ResolutionError);
    CHECK_THROWS_AS(FrequencyGrid(0.0, 5.0, 20000).validate(b), ResolutionError); // misses the cutoff
    CHECK(FrequencyGrid::for_baths(b, 2).size() == 2 * (g.size() - 1) + 1);
}

TEST_CASE("tunneling self-energy identities")
{
    const BathSet b = fig9(0.02, 0.2, 0.4);
    const FrequencyGrid g = FrequencyGrid::for_baths(b);
    const BathSelfEnergy s = tunneling_self_energy(b.left, g);
    for (std::size_t k = 0; k < g.size(); k += 7) {
        const double kk = spectral_density(g[k], b.left);
        CHECK(s.retarded[k].imag() == doctest::Approx(-0.5 * kk).epsilon(1e-15));
        const cplx diff = s.greater[k] - s.lesser[k];
        CHECK(std::abs(diff - cplx(0.0, -kk)) < 1e-12 * (1.0 + kk));
        if (g[k] > 0.0 && kk > 0.0)
            CHECK(s.lesser[k].imag() == doctest::Approx(-kk * bose_occupation(g[k], b.left.temperature)).epsilon(1e-14));
    }
    // w = 0 sample carries the finite limit of K n
    CHECK(s.lesser[0].imag() == doctest::Approx(-b.left.coupling * b.left.temperature / (b.left.resonance * b.left.resonance)));
    // width factor scales every component
    const BathSelfEnergy s2 = tunneling_self_energy(b.left, g, 2.0, false);
    const std::size_t k = nearest(g, 2.0);
    CHECK(s2.retarded[k].imag() == doctest::Approx(2.0 * s.retarded[k].imag()));
    CHECK(s2.retarded[k].real() == 0.0);
}

TEST_CASE("principal value against an analytic transform")
{
    // P int_{-inf}^{inf} dx g/((x-c)^2+g^2) / (w - x) = pi (w - c) / ((w - c)^2 + g^2); use a wide
    // window so truncation is negligible near the centre.
    const double c = 50.0, gam = 0.5, h = 0.01;
    const std::size_t m = 10001;
    RVec f(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = h * static_cast<double>(k);
        f[k] = gam / ((x - c) * (x - c) + gam * gam);
    }
    const RVec p = principal_value(f);
    for (double w : {48.0, 49.5, 50.3, 51.0}) {
        const auto k = static_cast<std::size_t>(std::lround(w / h));
        const double exact = std::numbers::pi * (w - c) / ((w - c) * (w - c) + gam * gam);
        const double tail = 2.0 * gam / 50.0; // window truncation, first order
        CHECK(std::abs(p[k] - exact) < tail);
    }
}

TEST_CASE("Lamb shift is grid converged (Richardson)")
{
    const BathSet b = fig9(0.02, 0.2, 0.3);
    const FrequencyGrid g1 = FrequencyGrid::for_baths(b, 1);
    const FrequencyGrid g2 = FrequencyGrid::for_baths(b, 2);
    const FrequencyGrid g4 = FrequencyGrid::for_baths(b, 4);
    const BathSpec& bath = b.left;
    auto lam = [&](const FrequencyGrid& g) {
        RVec r;
        for (const cplx& z : tunneling_self_energy(bath, g).retarded) r.push_back(z.real());
        return r;
    };
    const RVec l1 = lam(g1), l2 = lam(g2), l4 = lam(g4);
    const double width = bath.coupling * bath.resonance;
    for (double w : {bath.resonance - 5.0 * width, bath.resonance + 5.0 * width}) {
        const std::size_t k1 = nearest(g1, w);
        const double x = g1[k1];
        const double a = l1[k1], b2 = l2[nearest(g2, x)], b4 = l4[nearest(g4, x)];
        const double extrapolated = (4.0 * b4 - b2) / 3.0;
        CHECK(std::abs(a - extrapolated) < 1e-4 * std::abs(extrapolated));
    }
}

TEST_CASE("mean-field propagator: free peak and Hartree shift")
{
    const FrequencyGrid g(0.0, 6.0, 60001);
    const CVec tiny(g.size(), cplx(0.0, -1e-3));
    auto spectrum = [&](double dz, double n) {
        const CVec gr = mean_field_retarded(2.0, dz, n, tiny, g, 0.0);
        RVec a(g.size());
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = -2.0 * gr[k].imag();
        return a;
    };
    CHECK(peak_location(spectrum(0.0, 0.7), g) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(peak_location(spectrum(0.3, 1.0), g) == doctest::Approx(2.3).epsilon(1e-12));
    CHECK(spectral_weight(mean_field_retarded(2.0, 0.0, 0.0, tiny, g, 0.0), g) == doctest::Approx(1.0).epsilon(1e-3));
    // undamped sample inside the bath window
    CHECK_THROWS_AS(mean_field_retarded(2.0, 0.0, 0.0, CVec(g.size(), cplx(0.0, 0.0)), g, 5.0), BroadeningError);
}

TEST_CASE("Keldysh relations with tunneling self-energies")
{
    const BathSet b = fig9(0.02, 0.2, 0.5);
    const FrequencyGrid g = FrequencyGrid::for_baths(b);
    const BathSelfEnergy s = tunneling_self_energy(b.left, g, 2.0, true);
    const CVec gr = mean_field_retarded(2.0, 0.2, 0.3, s.retarded, g, b.left.cutoff);
    const LesserGreater lg = keldysh_lesser_greater(gr, s.lesser, s.greater);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const cplx ga = std::conj(gr[k]);
        CHECK(std::abs((lg.greater[k] - lg.lesser[k]) - (gr[k] - ga)) < 1e-10);
        CHECK(-lg.lesser[k].imag() >= -1e-12);  // i G^< >= 0
        CHECK(-lg.greater[k].imag() >= -1e-12); // i G^> >= 0 for bosons
        CHECK(lg.lesser[k].real() == 0.0);
        // single bath in equilibrium: i G^< = n A
        const double a = -2.0 * gr[k].imag();
        if (g[k] > 0.0 && a > 0.0) {
            const double n = bose_occupation(g[k], b.left.temperature);
            CHECK(std::abs(-lg.lesser[k].imag() - n * a) <= 1e-12 * (1.0 + n * a));
        }
    }
}

TEST_CASE("xc self-energy: zero coupling, positivity, brute-force convolution")
{
    const BathSet b = fig9(0.02, 0.2, 0.3);
    NegfOptions opt;
    const NegfResult r = negf_solve({2.0, 2.0, 0.2}, b, opt);
    const SpectralFunctionGrid& f = r.functions;
    const FrequencyGrid& g = f.grid;

    const XcSelfEnergy zero = xc_self_energy(f.r2.lesser, f.r2.greater, f.r1.lesser, f.r1.greater, 0.0, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(zero.lesser[k] == cplx(0.0, 0.0));
        CHECK(f.xc2.lesser[k].real() == 0.0);
        CHECK(-f.xc2.lesser[k].imag() >= 0.0);
        CHECK(-f.xc2.greater[k].imag() >= 0.0);
    }
    CHECK(f.xc2.window_leak < 1e-6);

    // Direct double sum on the grid.
    const std::size_t m = g.size();
    const double h = g.spacing() / kTwoPi;
    RVec aj(m), bj(m), ak(m), bk(m);
    for (std::size_t k = 0; k < m; ++k) {
        aj[k] = -f.r2.lesser[k].imag();
        bj[k] = -f.r2.greater[k].imag();
        ak[k] = -f.r1.lesser[k].imag();
        bk[k] = -f.r1.greater[k].imag();
    }
    std::vector<double> pl(2 * m - 1, 0.0), pg(2 * m - 1, 0.0); // index d + m - 1
    for (long d = -static_cast<long>(m) + 1; d < static_cast<long>(m); ++d) {
        double sl = 0.0, sg = 0.0;
        for (long q = std::max(0L, -d); q < static_cast<long>(m) && q + d < static_cast<long>(m); ++q) {
            sl += ak[static_cast<std::size_t>(q + d)] * bk[static_cast<std::size_t>(q)];
            sg += bk[static_cast<std::size_t>(q + d)] * ak[static_cast<std::size_t>(q)];
        }
        pl[static_cast<std::size_t>(d + static_cast<long>(m) - 1)] = h * sl;
        pg[static_cast<std::size_t>(d + static_cast<long>(m) - 1)] = h * sg;
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(1.0, 3.5);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = nearest(g, u(rng));
        double sl = 0.0, sg = 0.0;
        for (std::size_t q = 0; q < m; ++q) { // q = n - d
            const long d = static_cast<long>(n) - static_cast<long>(q);
            sl += aj[q] * pl[static_cast<std::size_t>(d + static_cast<long>(m) - 1)];
            sg += bj[q] * pg[static_cast<std::size_t>(d + static_cast<long>(m) - 1)];
        }
        sl *= 0.2 * 0.2 * h;
        sg *= 0.2 * 0.2 * h;
        CHECK(std::abs(-f.xc2.lesser[n].imag() - sl) <= 1e-6 * sl);
        CHECK(std::abs(-f.xc2.greater[n].imag() - sg) <= 1e-6 * sg);
    }
}

TEST_CASE("window check fires when tails are not resolved")
{
    const BathSet b = fig9(0.02, 0.2, 0.3);
    NegfOptions opt;
    opt.window_tolerance = 1e-14;
    CHECK_THROWS_AS(negf_solve({2.0, 2.0, 0.2}, b, opt), WindowError);
}

TEST_CASE("self-consistency without interaction takes one step")
{
    const BathSet b = fig9(0.02, 0.0, 0.4);
    const NegfResult r = negf_solve({2.0, 2.0, 0.0}, b);
    CHECK(r.state.iterations == 1);
    // closed quadrature of the free broadened modes
    const FrequencyGrid& g = r.functions.grid;
    RVec a1(g.size()), a2(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double w = g[k];
        auto kn = [&](const BathSpec& x) {
            return w > 0.0 ? 2.0 * rate_in(w, x) : 2.0 * x.coupling * x.temperature / (x.resonance * x.resonance);
        };
        const double w1 = 2.0 * (spectral_density(w, b.left) + spectral_density(w, b.right));
        const double w2 = 2.0 * spectral_density(w, b.cold);
        a1[k] = (kn(b.left) + kn(b.right)) / ((w - 2.0) * (w - 2.0) + 0.25 * w1 * w1);
        a2[k] = kn(b.cold) / ((w - 2.0) * (w - 2.0) + 0.25 * w2 * w2);
    }
    CHECK(r.state.n1 == doctest::Approx(trapezoid(a1, g.spacing()) / kTwoPi).epsilon(1e-12));
    CHECK(r.state.n2 == doctest::Approx(trapezoid(a2, g.spacing()) / kTwoPi).epsilon(1e-12));
    CHECK(heat_current_C_negf(r) == 0.0);
}

TEST_CASE("equilibrium: fluctuation-dissipation occupations and no current")
{
    for (double dz : {0.05, 0.2, 0.4}) {
        const BathSet b = fig9(0.02, dz, 0.0);
        NegfOptions opt;
        const NegfResult r = negf_solve({2.0, 2.0, dz}, b, opt);
        const FrequencyGrid& g = r.functions.grid;
        RVec f1(g.size()), f2(g.size());
        const RVec a1 = r.functions.r1.spectral(), a2 = r.functions.r2.spectral();
        for (std::size_t k = 0; k < g.size(); ++k) {
            // n(w) A(w) with the w -> 0 limit of K n / K
            const double n = g[k] > 0.0 ? bose_occupation(g[k], 1.0) : 0.0;
            f1[k] = g[k] > 0.0 ? n * a1[k] : -r.functions.r1.lesser[k].imag();
            f2[k] = g[k] > 0.0 ? n * a2[k] : -r.functions.r2.lesser[k].imag();
        }
        CHECK(std::abs(r.state.n1 - trapezoid(f1, g.spacing()) / kTwoPi) < 10.0 * opt.tolerance);
        CHECK(std::abs(r.state.n2 - trapezoid(f2, g.spacing()) / kTwoPi) < 10.0 * opt.tolerance);
        CHECK(std::abs(heat_current_C_negf(r)) < 1e-8);
    }
}

TEST_CASE("spectral sum rules with the causal self-energy")
{
    // Only Sigma^r = Lambda - i Gamma/2 is Kramers-Kronig consistent; the
    // dissipative-only default does not conserve spectral weight.
    for (double gl : {0.01, 0.02}) {
        const BathSet b = fig9(gl, 0.2, 0.5);
        const FrequencyGrid g = FrequencyGrid::for_baths(b);
        const BathSelfEnergy l = tunneling_self_energy(b.left, g);
        const BathSelfEnergy r = tunneling_self_energy(b.right, g);
        const BathSelfEnergy c = tunneling_self_energy(b.cold, g);
        CVec s1(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) s1[k] = l.retarded[k] + r.retarded[k];
        for (double n : {0.0, 0.2, 1.0}) {
            CHECK(spectral_weight(mean_field_retarded(2.0, 0.2, n, s1, g, 7.0), g) == doctest::Approx(1.0).epsilon(0.01));
            CHECK(spectral_weight(mean_field_retarded(2.0, 0.2, n, c.retarded, g, 7.0), g) == doctest::Approx(1.0).epsilon(0.01));
        }
    }
    const NegfResult res = negf_solve({2.0, 2.0, 0.2}, fig9(0.02, 0.2, 0.5));
    for (std::size_t k = 0; k < res.functions.grid.size(); k += 97)
        CHECK(res.functions.r1.advanced()[k] == std::conj(res.functions.r1.retarded[k]));
}

TEST_CASE("convergence failure reports the residual history")
{
    NegfOptions opt;
    opt.max_iterations = 3;
    try {
        negf_solve({2.0, 2.0, 0.4}, fig9(0.02, 0.4, 0.5), opt);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual_history.size() == 3);
        CHECK(e.residual_history.back() < e.residual_history.front());
    }
    opt.max_iterations = 200;
    opt.mixing = 0.0;
    CHECK_THROWS_AS(negf_solve({2.0, 2.0, 0.4}, fig9(0.02, 0.4, 0.5), opt), DomainError);
}

TEST_CASE("weak nonlinearity gives no cooling")
{
    for (double dz : {0.005, 0.01, 0.02})
        for (double dt = 0.05; dt <= 1.0 + 1e-9; dt += 0.05)
            CHECK(heat_current_C_negf(negf_solve({2.0, 2.0, dz}, fig9(0.02, dz, dt))) <= 0.0);
}

TEST_CASE("grid doubling leaves the current unchanged")
{
    for (auto [gl, dt] : {std::pair{0.01, 0.75}, std::pair{0.02, 0.15}}) {
        NegfOptions opt;
        const double j1 = heat_current_C_negf(negf_solve({2.0, 2.0, 0.2}, fig9(gl, 0.2, dt), opt));
        opt.grid_refine = 2;
        const double j2 = heat_current_C_negf(negf_solve({2.0, 2.0, 0.2}, fig9(gl, 0.2, dt), opt));
        CHECK(std::abs(j2 - j1) < 0.01 * std::abs(j1));
    }
}
