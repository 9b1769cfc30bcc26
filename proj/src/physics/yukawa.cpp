#include "negmass/yukawa.hpp"

#include <cmath>

#include "negmass/core/errors.hpp"

namespace negmass::yukawa {

double YukawaSpec::signed_inverse_length(const Constants& k) const
{
    if (units == UnitSystem::natural)
        return carrier.value();
    return carrier.value() * k.c / k.hbar;
}

double potential(const YukawaSpec& spec, double r, const Constants& k)
{
    if (!(r > 0.0))
        throw DomainError("yukawa potential: r must be > 0");
    return spec.g * std::exp(-spec.signed_inverse_length(k) * r) / r;
}

double coulomb_limit(const YukawaSpec& spec, double r)
{
    if (!(r > 0.0))
        throw DomainError("yukawa potential: r must be > 0");
    return spec.g / r;
}

double turning_point(double inverse_length)
{
    if (!(inverse_length > 0.0))
        throw DomainError("turning_point: |m| must be > 0");
    return 1.0 / inverse_length;
}

double mass_bound_for_range(double r, const Constants& k)
{
    if (!(r > 0.0))
        throw DomainError("mass_bound_for_range: r must be > 0");
    if (k.mode != UnitSystem::si)
        throw DomainError("mass_bound_for_range: needs SI constants");
    return k.hbar * k.c / r / joule_per_ev;
}

Curve sample_curve(const YukawaSpec& spec, double r_lo, double r_hi, std::size_t n,
                   const Constants& k)
{
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || n < 2)
        throw DomainError("sample_curve: need 0 < r_lo < r_hi and n >= 2");
    Curve out;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double r = r_lo + (r_hi - r_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        out.r.push_back(r);
        out.V.push_back(potential(spec, r, k));
    }
    return out;
}

}  // namespace negmass::yukawa
