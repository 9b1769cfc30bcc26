#pragma once

#include <Eigen/Core>

#include "negmass/core/signed_mass.hpp"

namespace negmass {

using Vec3 = Eigen::Vector3d;

struct TimeSpan
{
    double begin;
    double end;

    double length() const noexcept { return end - begin; }
};

/// Classical point particle in one inertial frame.
struct ParticleState
{
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    SignedMass mass{Sign::positive, 1.0};
    double charge = 0.0;
};

/// Lorentz factor 1/sqrt(1 - v^2/c^2). Throws DomainError("superluminal")
/// for |v| >= c.
double lorentz_gamma(const Vec3& v, double c);
double lorentz_gamma(double speed, double c);

/// gamma - 1 without cancellation at small speed.
double lorentz_gamma_minus_one(double speed, double c);

}  // namespace negmass
