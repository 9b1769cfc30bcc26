#pragma once

#include <optional>
#include <string>
#include <vector>

#include "negmass/core/constants.hpp"
#include "negmass/core/ode.hpp"
#include "negmass/twobody.hpp"

namespace negmass::reldyn {

/// Negative mass driven into a barrier that absorbs momentum at the rate
/// dp/dt = p / tau.
struct BarrierModel
{
    SignedMass m{Sign::negative, 1.0};
    double v0 = 0.1;
    double tau = 1.0;
    double F_yield = 1.0;

    void validate(double c) const;
    double gamma0(double c) const { return lorentz_gamma(v0, c); }
};

/// v(t) = sqrt(g0^2 v0^2 e^{2t/tau} / (1 + g0^2 v0^2 e^{2t/tau} / c^2)).
double barrier_velocity(const BarrierModel& model, double t, double c);

/// F(t) = (|m| / tau) g0 v0 e^{t/tau}.
double barrier_force(const BarrierModel& model, double t, double c);

struct YieldTime
{
    double time;
    /// tau F_yield <= |m| g0 v0: the barrier yields on contact.
    bool immediate;
};

/// T_yield = tau ln(tau F_yield / (|m| g0 v0)).
YieldTime yield_time(const BarrierModel& model, double c);

struct EmConfig
{
    /// Integrate d(gamma m v)/dt = q (E + v x B) instead of the
    /// non-relativistic equation.
    bool relativistic = false;
    std::size_t n_samples = 1001;
    IntegratorConfig integrator;
    Constants constants = Constants::natural();
};

struct EmResult
{
    /// Rows [x, y, z, vx, vy, vz].
    Trajectory trajectory;
    bool blow_up = false;
    std::string message;
};

/// dv/dt = (q/m)(E + v x B) with signed m. A blow-up ends the run early and
/// is reported in the result rather than thrown.
EmResult em_motion(const ParticleState& state, const Vec3& E, const Vec3& B, TimeSpan span,
                   const EmConfig& cfg);

enum class PairCoupling
{
    gravitational,
    electrostatic
};

/// Positive and negative mass released on the x axis, negative mass at the
/// origin and positive mass at +d0.
struct RunawayPair
{
    SignedMass m_plus{Sign::positive, 1.0};
    SignedMass m_minus{Sign::negative, 1.0};
    double d0 = 1.0;
    PairCoupling coupling = PairCoupling::gravitational;
    double q_plus = 0.0;
    double q_minus = 0.0;
    /// Fraction of d0 below which the run halts (close approach).
    double softening_fraction = 1e-6;

    void validate() const;
};

struct RunawaySample
{
    double t;
    double x_plus;
    double x_minus;
    double v_plus;
    double v_minus;
    double separation;
    double p_total;
    double E_total;
};

struct RunawayResult
{
    std::vector<RunawaySample> samples;
    std::optional<twobody::CloseApproach> close_approach;
    /// sqrt(d0^3 / (G |m_plus|)) for gravity, sqrt(4 pi eps d0^3 |m_plus| / |q+ q-|)
    /// for electrostatics.
    double dynamical_time;
};

struct RunawayConfig
{
    std::size_t n_samples = 1001;
    IntegratorConfig integrator;
    Constants constants = Constants::natural();
};

/// Relativistic equations dp_i/dt = F_i with p = gamma m v for the pair.
RunawayResult runaway_pair_sim(const RunawayPair& pair, TimeSpan span,
                               const RunawayConfig& cfg);

}  // namespace negmass::reldyn
