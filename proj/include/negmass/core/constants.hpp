#pragma once

#include <numbers>

namespace negmass {

enum class UnitSystem
{
    si,
    natural
};

/// Physical constants for one unit convention. Natural mode sets
/// c = hbar = G = k_B = 1 and 4*pi*eps0 = 1.
struct Constants
{
    double c;
    double G;
    double epsilon0;
    double hbar;
    double k_B;
    double elementary_charge;
    UnitSystem mode;

    static constexpr Constants si() noexcept
    {
        // CODATA 2018
        return Constants{299792458.0,
                         6.67430e-11,
                         8.8541878128e-12,
                         1.054571817e-34,
                         1.380649e-23,
                         1.602176634e-19,
                         UnitSystem::si};
    }

    static constexpr Constants natural() noexcept
    {
        return Constants{1.0, 1.0, 1.0 / (4.0 * std::numbers::pi), 1.0, 1.0, 1.0,
                         UnitSystem::natural};
    }

    constexpr double h() const noexcept { return 2.0 * std::numbers::pi * hbar; }
    /// 4*pi*eps0
    constexpr double four_pi_eps() const noexcept
    {
        return 4.0 * std::numbers::pi * epsilon0;
    }
    /// Coulomb constant 1/(4*pi*eps0).
    constexpr double coulomb_k() const noexcept { return 1.0 / four_pi_eps(); }
};

inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double joule_per_ev = 1.602176634e-19;

}  // namespace negmass
