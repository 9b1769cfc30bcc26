#include "negmass/core/types.hpp"

#include <cmath>
#include <string>

namespace negmass {

double lorentz_gamma(double speed, double c)
{
    const double beta = std::fabs(speed) / c;
    if (!(beta < 1.0))
        throw DomainError("superluminal: |v|/c = " + std::to_string(beta));
    // (1 - beta)(1 + beta) keeps precision as beta -> 1.
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

double lorentz_gamma(const Vec3& v, double c) { return lorentz_gamma(v.norm(), c); }

double lorentz_gamma_minus_one(double speed, double c)
{
    const double gamma = lorentz_gamma(speed, c);
    const double beta = speed / c;
    // gamma - 1 = beta^2 gamma^2 / (gamma + 1)
    return beta * beta * gamma * gamma / (gamma + 1.0);
}

}  // namespace negmass
