#include "negmass/thermo.hpp"

#include <cmath>
#include <numbers>

#include "negmass/core/errors.hpp"

namespace negmass::thermo {

bool partition_function_defined(const GasSpec& spec) noexcept
{
    return spec.m.value() * spec.T > 0.0;
}

double single_species_Z(const GasSpec& spec, const Constants& k)
{
    if (!partition_function_defined(spec))
        throw DomainError("undefined partition function: mass-temperature sign mismatch");
    if (!(spec.volume > 0.0))
        throw DomainError("single_species_Z: volume must be > 0");
    const double h = k.h();
    const double base = 2.0 * std::numbers::pi * spec.m.magnitude() * k.k_B * std::fabs(spec.T)
                        / (h * h);
    return spec.volume * std::pow(base, 1.5);
}

std::string to_string(TemperatureSet set)
{
    switch (set)
    {
    case TemperatureSet::zero_only: return "{0}";
    case TemperatureSet::positive_half_line: return "(0, inf)";
    case TemperatureSet::negative_half_line: return "(-inf, 0)";
    case TemperatureSet::empty: return "{}";
    }
    return "?";
}

MixtureReport mixture_equilibrium(const GasSpec& a, const GasSpec& b)
{
    bool need_positive = false, need_negative = false;
    for (const GasSpec* g : {&a, &b})
    {
        if (g->N == 0)
            continue;
        (g->m.is_negative() ? need_negative : need_positive) = true;
    }
    if (need_positive && need_negative)
        return {TemperatureSet::zero_only, true};
    if (need_positive)
        return {TemperatureSet::positive_half_line, false};
    if (need_negative)
        return {TemperatureSet::negative_half_line, false};
    return {TemperatureSet::empty, false};
}

EntropyCurve entropy_slope(std::span<const double> U, const GasSpec& gas, const Constants& k)
{
    if (U.size() < 2)
        throw DomainError("entropy_slope: need at least two grid points");
    if (gas.N == 0 || !(gas.volume > 0.0))
        throw DomainError("entropy_slope: need N >= 1 and volume > 0");
    const double sign = gas.m.lambda();
    const bool ascending = U[1] > U[0];
    for (std::size_t i = 0; i < U.size(); ++i)
    {
        if (!(U[i] * sign > 0.0))
            throw DomainError("entropy_slope: energy sign must match the mass sign");
        if (i > 0 && ((U[i] > U[i - 1]) != ascending || U[i] == U[i - 1]))
            throw DomainError("entropy_slope: energy grid must be strictly monotone");
    }
    const double N = static_cast<double>(gas.N);
    const double h = k.h();
    EntropyCurve out;
    for (double u : U)
    {
        // S = N k [ ln( V/N (4 pi |m| |U| / (3 N h^2))^{3/2} ) + 5/2 ]
        const double arg = gas.volume / N
                           * std::pow(4.0 * std::numbers::pi * gas.m.magnitude() * std::fabs(u)
                                          / (3.0 * N * h * h),
                                      1.5);
        out.U.push_back(u);
        out.S.push_back(N * k.k_B * (std::log(arg) + 2.5));
        out.dS_dU.push_back(1.5 * N * k.k_B / u);
        out.T.push_back(2.0 * u / (3.0 * N * k.k_B));
    }
    return out;
}

}  // namespace negmass::thermo
