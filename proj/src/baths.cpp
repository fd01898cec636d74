#include "qar/baths.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qar/errors.hpp"

namespace qar {

std::string_view to_string(BathLabel label)
{
    switch (label) {
        case BathLabel::L: return "L";
        case BathLabel::R: return "R";
        case BathLabel::C: return "C";
    }
    return "?";
}

void BathSpec::validate() const
{
    const std::string name{to_string(label)};
    if (!(temperature > 0.0)) throw DomainError("bath " + name + ": temperature must be > 0");
    if (!(coupling > 0.0)) throw DomainError("bath " + name + ": coupling must be > 0");
    if (!(cutoff > 0.0)) throw DomainError("bath " + name + ": cutoff must be > 0");
    if (!std::isfinite(resonance)) throw DomainError("bath " + name + ": resonance must be finite");
}

void BathSet::validate() const
{
    left.validate();
    right.validate();
    cold.validate();
}

double bose_occupation(double omega, double temperature)
{
    if (!(omega > 0.0)) throw DomainError("bose_occupation: omega must be > 0");
    if (!(temperature > 0.0)) throw DomainError("bose_occupation: temperature must be > 0");
    // expm1 keeps the small-omega (classical) limit accurate; overflow gives 0.
    return 1.0 / std::expm1(omega / temperature);
}

double spectral_density(double omega, const BathSpec& bath)
{
    if (!(omega > 0.0) || !(omega < bath.cutoff)) return 0.0;
    const double width = bath.coupling * omega;
    const double detuning = omega - bath.resonance;
    return width / (detuning * detuning + width * width);
}

double rate_in(double omega, const BathSpec& bath)
{
    if (!(omega > 0.0)) return 0.0;
    const double k = spectral_density(omega, bath);
    if (k == 0.0) return 0.0;
    return k * bose_occupation(omega, bath.temperature);
}

double rate_out(double omega, const BathSpec& bath)
{
    if (!(omega > 0.0)) return 0.0;
    const double k = spectral_density(omega, bath);
    if (k == 0.0) return 0.0;
    return k * (1.0 + bose_occupation(omega, bath.temperature));
}

double transition_rate(double from, double to, const BathSpec& bath)
{
    const double gap = to - from;
    return gap > 0.0 ? rate_in(gap, bath) : rate_out(-gap, bath);
}

double absorption_weight_at_zero(const BathSpec& bath)
{
    if (bath.resonance == 0.0) return std::numeric_limits<double>::infinity();
    return bath.coupling * bath.temperature / (bath.resonance * bath.resonance);
}

} // namespace qar
