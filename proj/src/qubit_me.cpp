#include "qar/qubit_me.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qar/errors.hpp"

namespace qar {

void QubitSystem::validate() const
{
    if (!std::isfinite(eps1)) throw DomainError("qubit: eps1 must be finite");
    if (!(eps2 > 0.0)) throw DomainError("qubit: eps2 must be > 0");
    if (!(delta_z >= 0.0)) throw DomainError("qubit: delta_z must be >= 0");
    if (!std::isfinite(delta_x)) throw DomainError("qubit: delta_x must be finite");
}

ChannelRates& ChannelRates::operator+=(const ChannelRates& o)
{
    r01 += o.r01; r10 += o.r10;
    r2d += o.r2d; rd2 += o.rd2;
    r02 += o.r02; r20 += o.r20;
    r1d += o.r1d; rd1 += o.rd1;
    return *this;
}

ChannelRates QubitRates::total() const
{
    ChannelRates t = left;
    t += right;
    t += cold;
    return t;
}

const ChannelRates& QubitRates::of(BathLabel label) const
{
    switch (label) {
        case BathLabel::L: return left;
        case BathLabel::R: return right;
        case BathLabel::C: return cold;
    }
    throw std::invalid_argument("unknown bath");
}

namespace {

// Transition energies are formed as eps + dz rather than as differences of
// state energies, so the rates are bit-identical to the resonator model.
ChannelRates upper_rates(const QubitSystem& sys, const BathSpec& b)
{
    const double lo = sys.eps1;
    const double hi = sys.eps1 + sys.delta_z;
    ChannelRates r;
    r.r01 = transition_rate(0.0, lo, b);
    r.r10 = transition_rate(lo, 0.0, b);
    r.r2d = transition_rate(0.0, hi, b);
    r.rd2 = transition_rate(hi, 0.0, b);
    return r;
}

ChannelRates lower_rates(const QubitSystem& sys, const BathSpec& b)
{
    const double lo = sys.eps2;
    const double hi = sys.eps2 + sys.delta_z;
    ChannelRates r;
    r.r02 = transition_rate(0.0, lo, b);
    r.r20 = transition_rate(lo, 0.0, b);
    r.r1d = transition_rate(0.0, hi, b);
    r.rd1 = transition_rate(hi, 0.0, b);
    return r;
}

double channel_flux(const ChannelRates& r, const std::array<double, 4>& e, const Eigen::Vector4d& p)
{
    auto term = [&](std::size_t a, std::size_t b, double fwd, double bwd) {
        return (e[b] - e[a]) * (fwd * p(static_cast<Eigen::Index>(a)) - bwd * p(static_cast<Eigen::Index>(b)));
    };
    return term(kState0, kState1, r.r01, r.r10) + term(kState2, kStateD, r.r2d, r.rd2)
        + term(kState0, kState2, r.r02, r.r20) + term(kState1, kStateD, r.r1d, r.rd1);
}

QubitSolution finish(const QubitSystem& sys, const QubitRates& rates, const RateMatrix& w)
{
    QubitSolution s;
    s.populations = steady_state(w);
    s.current_l = heat_current(sys, rates, BathLabel::L, s.populations);
    s.current_r = heat_current(sys, rates, BathLabel::R, s.populations);
    s.current_c = heat_current(sys, rates, BathLabel::C, s.populations);
    return s;
}

} // namespace

QubitRates build_rates_zz(const QubitSystem& sys, const BathSet& baths)
{
    sys.validate();
    baths.validate();
    QubitRates r;
    r.left = upper_rates(sys, baths.left);
    r.right = upper_rates(sys, baths.right);
    r.cold = lower_rates(sys, baths.cold);
    return r;
}

RateMatrix generator(const QubitRates& rates)
{
    const ChannelRates t = rates.total();
    RateMatrix w(4);
    w.add_pair(kState0, kState1, t.r01, t.r10);
    w.add_pair(kState2, kStateD, t.r2d, t.rd2);
    w.add_pair(kState0, kState2, t.r02, t.r20);
    w.add_pair(kState1, kStateD, t.r1d, t.rd1);
    return w;
}

double heat_current(const QubitSystem& sys, const QubitRates& rates, BathLabel label, const Eigen::Vector4d& p)
{
    return channel_flux(rates.of(label), sys.energies(), p);
}

double heat_current_C_zz(const QubitSystem& sys, const QubitRates& rates, const Eigen::Vector4d& p)
{
    return heat_current(sys, rates, BathLabel::C, p);
}

double heat_current_C_zz(const QubitSystem& sys, const BathSet& baths, const Eigen::Vector4d& p)
{
    return heat_current_C_zz(sys, build_rates_zz(sys, baths), p);
}

CoolingCondition cooling_condition(const QubitSystem& sys, const BathSet& baths, const QubitRates& rates)
{
    const ChannelRates t = rates.total();
    CoolingCondition c;
    // Kirchhoff/Hill: the only cycle of the ring carries J_C = dz * (flux).
    const double cycle = t.r01 * t.r1d * t.rd2 * t.r20 - t.r10 * t.rd1 * t.r2d * t.r02;
    c.general = sys.delta_z > 0.0 && cycle > 0.0;

    const double bl = 1.0 / baths.left.temperature;
    const double br = 1.0 / baths.right.temperature;
    const double bc = 1.0 / baths.cold.temperature;
    c.optimal = bc * sys.eps2 + br * (sys.eps1 + sys.delta_z) > bc * (sys.eps2 + sys.delta_z) + bl * sys.eps1;
    c.simple = bc * sys.delta_z < bl * sys.eps1;
    return c;
}

CoolingCondition cooling_condition(const QubitSystem& sys, const BathSet& baths)
{
    return cooling_condition(sys, baths, build_rates_zz(sys, baths));
}

double jc_perturbative(double eps, double delta_z, double delta_t, double temperature, const BathSpec& shape)
{
    const double x = eps / temperature;
    const double k0 = spectral_density(eps, shape);
    const double k1 = spectral_density(eps + delta_z, shape);
    const double ex = std::exp(x);
    const double denom = (1.0 + ex) * (1.0 + ex) * (k1 + k0 * ex);
    if (denom == 0.0) return 0.0;
    return -std::exp(2.0 * x) * k0 * k1 / std::expm1(x) * delta_t / denom * (delta_z * delta_z) / (temperature * temperature);
}

QubitSolution solve_zz(const QubitSystem& sys, const BathSet& baths)
{
    if (sys.delta_x != 0.0) throw std::invalid_argument("solve_zz: delta_x must be zero");
    const QubitRates rates = build_rates_zz(sys, baths);
    return finish(sys, rates, generator(rates));
}

double local_exchange_rate(const QubitSystem& sys, const QubitRates& rates)
{
    if (sys.delta_x == 0.0) return 0.0;
    const ChannelRates t = rates.total();
    const double width = t.r10 + t.r1d + t.r20 + t.r2d;
    const double detuning = sys.eps1 - sys.eps2;
    return sys.delta_x * sys.delta_x * width / (detuning * detuning + 0.25 * width * width);
}

QubitSolution local_me_solve(const QubitSystem& sys, const BathSet& baths)
{
    const QubitRates rates = build_rates_zz(sys, baths);
    RateMatrix w = generator(rates);
    const double x = local_exchange_rate(sys, rates);
    w.add_pair(kState1, kState2, x, x);
    return finish(sys, rates, w);
}

GlobalBasis global_basis(const QubitSystem& sys)
{
    GlobalBasis g;
    g.theta = 0.5 * std::atan2(2.0 * sys.delta_x, sys.eps1 - sys.eps2);
    const double mean = 0.5 * (sys.eps1 + sys.eps2);
    const double half = std::hypot(0.5 * (sys.eps1 - sys.eps2), sys.delta_x);
    g.e_plus = mean + half;
    g.e_minus = mean - half;
    return g;
}

QubitSolution global_me_solve(const QubitSystem& sys, const BathSet& baths)
{
    sys.validate();
    baths.validate();
    const GlobalBasis g = global_basis(sys);
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    const std::array<double, 4> e{0.0, g.e_plus, g.e_minus, sys.eps_d()};
    // <l|1>, <l|2> for l = +, -
    const double ov1[2] = {c, s};
    const double ov2[2] = {s, -c};

    struct Channel {
        std::size_t from, to;
        BathLabel bath;
        double weight;
    };
    std::vector<Channel> channels;
    for (int k = 0; k < 2; ++k) {
        const std::size_t l = k == 0 ? kState1 : kState2;
        const double w1 = ov1[k] * ov1[k];
        const double w2 = ov2[k] * ov2[k];
        channels.push_back({kState0, l, BathLabel::L, w1});
        channels.push_back({l, kStateD, BathLabel::L, w2});
        channels.push_back({kState0, l, BathLabel::R, w1});
        channels.push_back({l, kStateD, BathLabel::R, w2});
        channels.push_back({kState0, l, BathLabel::C, w2});
        channels.push_back({l, kStateD, BathLabel::C, w1});
    }
    auto bath_of = [&](BathLabel b) -> const BathSpec& {
        return b == BathLabel::L ? baths.left : b == BathLabel::R ? baths.right : baths.cold;
    };

    RateMatrix w(4);
    for (const auto& ch : channels) {
        const BathSpec& b = bath_of(ch.bath);
        w.add_pair(ch.from, ch.to, ch.weight * transition_rate(e[ch.from], e[ch.to], b),
                   ch.weight * transition_rate(e[ch.to], e[ch.from], b));
    }

    QubitSolution sol;
    sol.populations = steady_state(w);
    const Eigen::Vector4d& p = sol.populations;
    for (const auto& ch : channels) {
        const BathSpec& b = bath_of(ch.bath);
        const double fwd = ch.weight * transition_rate(e[ch.from], e[ch.to], b);
        const double bwd = ch.weight * transition_rate(e[ch.to], e[ch.from], b);
        const double j = (e[ch.to] - e[ch.from])
            * (fwd * p(static_cast<Eigen::Index>(ch.from)) - bwd * p(static_cast<Eigen::Index>(ch.to)));
        if (ch.bath == BathLabel::L) sol.current_l += j;
        else if (ch.bath == BathLabel::R) sol.current_r += j;
        else sol.current_c += j;
    }
    return sol;
}

} // namespace qar
