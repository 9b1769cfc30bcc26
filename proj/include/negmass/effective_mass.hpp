#pragma once

#include <vector>

#include "negmass/core/constants.hpp"
#include "negmass/core/ode.hpp"

namespace negmass::effective_mass {

/// Gas bubble held in a static fluid.
struct BubbleSpec
{
    double gas_density;    // kg/m^3
    double fluid_density;  // kg/m^3
    double volume;         // m^3
    double g = 9.80665;    // m/s^2

    void validate() const;
};

struct BubbleMass
{
    double effective;  // -(rho_f - rho) V
    double bare;       // rho V
    double net_force;  // -(rho_f - rho) V g, positive axis pointing down
};

BubbleMass bubble_effective_mass(const BubbleSpec& spec);

/// One-dimensional band E(k) = E0 - C (k - k0)^2 around a maximum at k0.
struct BandSpec
{
    double E0;            // J
    double C;             // J m^2, > 0
    double k0;            // 1/m
    double zone_width;    // 1/m, extent of the reciprocal-space zone
    double neighborhood_fraction = 0.1;
    double k_initial;     // 1/m

    void validate() const;
    /// m* defined by C = hbar^2 / (2 m*).
    double effective_mass(const Constants& k) const { return k.hbar * k.hbar / (2.0 * C); }
    double neighborhood_radius() const { return neighborhood_fraction * zone_width; }
};

struct BandSample
{
    double t;
    double k;
    double velocity;      // (1/hbar) dE/dk
    double acceleration;  // -(hbar/m*) dk/dt
};

struct BandTrajectory
{
    std::vector<BandSample> samples;
    double force;  // -e E on the electron
    double effective_mass;
};

/// Integrates hbar dk/dt = -e E and reports group velocity and acceleration
/// at each sample. Throws DomainError("band approximation violated") if
/// |k - k0| leaves the quadratic neighborhood.
BandTrajectory band_dynamics(const BandSpec& spec, double electric_field, TimeSpan span,
                             std::size_t n_samples, const IntegratorConfig& cfg,
                             const Constants& k = Constants::si());

}  // namespace negmass::effective_mass
