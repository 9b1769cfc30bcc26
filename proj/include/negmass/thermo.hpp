#pragma once

#include <span>
#include <string>
#include <vector>

#include "negmass/core/constants.hpp"
#include "negmass/core/signed_mass.hpp"

namespace negmass::thermo {

/// Classical ideal gas of one species. N = 0 marks an absent species.
struct GasSpec
{
    SignedMass m;
    double T;            // K (signed)
    std::size_t N = 1;
    double volume = 1.0; // m^3
};

/// Single-particle partition function V (2 pi |m| k |T| / h^2)^{3/2}; only
/// defined when m T > 0. Throws DomainError otherwise.
double single_species_Z(const GasSpec& spec, const Constants& k = Constants::si());

/// true iff single_species_Z is defined for this sign pair.
bool partition_function_defined(const GasSpec& spec) noexcept;

enum class TemperatureSet
{
    zero_only,
    positive_half_line,
    negative_half_line,
    empty
};

std::string to_string(TemperatureSet set);

struct MixtureReport
{
    TemperatureSet admissible;
    bool thermodynamically_isolated;
};

/// Intersects the temperature domains required by every present species
/// (N >= 1). Opposite mass signs leave only T = 0.
MixtureReport mixture_equilibrium(const GasSpec& neg, const GasSpec& pos);

struct EntropyCurve
{
    std::vector<double> U;
    std::vector<double> S;
    std::vector<double> dS_dU;   // analytic 3 N k / (2 U) = 1/T
    std::vector<double> T;       // 2 U / (3 N k)
};

/// Sackur-Tetrode entropy with |m| and |U| for a monotone energy grid whose
/// sign matches the mass sign (U = (3/2) N k T and m T > 0).
EntropyCurve entropy_slope(std::span<const double> U_grid, const GasSpec& gas,
                           const Constants& k = Constants::si());

}  // namespace negmass::thermo
