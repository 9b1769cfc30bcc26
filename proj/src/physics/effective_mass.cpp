#include "negmass/effective_mass.hpp"

#include <cmath>
#include <sstream>

#include "negmass/core/errors.hpp"

namespace negmass::effective_mass {

void BubbleSpec::validate() const
{
    if (!(gas_density > 0.0 && fluid_density > 0.0 && volume > 0.0 && g > 0.0))
        throw DomainError("BubbleSpec: densities, volume and g must be positive");
}

BubbleMass bubble_effective_mass(const BubbleSpec& s)
{
    s.validate();
    const double m_eff = -(s.fluid_density - s.gas_density) * s.volume;
    return {m_eff, s.gas_density * s.volume, m_eff * s.g};
}

void BandSpec::validate() const
{
    if (!(C > 0.0))
        throw DomainError("BandSpec: C must be positive");
    if (!(zone_width > 0.0) || !(neighborhood_fraction > 0.0))
        throw DomainError("BandSpec: zone width and neighborhood fraction must be positive");
    if (std::fabs(k_initial - k0) > neighborhood_radius())
        throw DomainError("band approximation violated: initial k outside the neighborhood");
}

BandTrajectory band_dynamics(const BandSpec& spec, double E, TimeSpan span,
                             std::size_t n_samples, const IntegratorConfig& cfg,
                             const Constants& k)
{
    spec.validate();
    const double hbar = k.hbar;
    const double e = k.elementary_charge;
    const double m_star = spec.effective_mass(k);
    const double force = -e * E;
    const double kdot = force / hbar;
    const double radius = spec.neighborhood_radius();

    auto rhs = [kdot](double, std::span<const double>, std::span<double> dy) { dy[0] = kdot; };

    double violated_at = 0.0;
    OdeOptions opts;
    opts.sample_times = uniform_times(span, n_samples);
    opts.observer = [&](double t, std::span<const double> y) {
        if (std::fabs(y[0] - spec.k0) > radius)
        {
            violated_at = t;
            return true;
        }
        return false;
    };
    const double y0[1] = {spec.k_initial};
    const Trajectory traj = integrate_ode(rhs, y0, span, cfg, opts);
    if (traj.status == OdeStatus::stopped)
    {
        std::ostringstream msg;
        msg << "band approximation violated at t = " << violated_at
            << " (|k - k0| > " << radius << ")";
        throw DomainError(msg.str());
    }

    BandTrajectory out{{}, force, m_star};
    out.samples.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
    {
        const double kk = traj(i, 0);
        // v = (1/hbar) dE/dk = -2 C (k - k0) / hbar = -hbar (k - k0) / m*
        const double v = -2.0 * spec.C * (kk - spec.k0) / hbar;
        const double a = -(hbar / m_star) * kdot;
        out.samples.push_back({traj.time(i), kk, v, a});
    }
    return out;
}

}  // namespace negmass::effective_mass
