#include "negmass/reldyn.hpp"

#include <array>
#include <cmath>

#include <Eigen/Geometry>

namespace negmass::reldyn {

void BarrierModel::validate(double c) const
{
    if (!m.is_negative())
        throw DomainError("BarrierModel: the projectile mass must be negative");
    if (!(v0 > 0.0 && v0 < c))
        throw DomainError("BarrierModel: need 0 < v0 < c");
    if (!(tau > 0.0) || !(F_yield > 0.0))
        throw DomainError("BarrierModel: tau and F_yield must be positive");
}

double barrier_velocity(const BarrierModel& model, double t, double c)
{
    model.validate(c);
    if (t < 0.0)
        throw DomainError("barrier_velocity: t must be >= 0");
    // u = gamma v = g0 v0 e^{t/tau}; v = u / sqrt(1 + u^2/c^2) written so that
    // u -> inf gives c rather than inf/inf.
    const double u = model.gamma0(c) * model.v0 * std::exp(t / model.tau);
    const double ratio = c / u;
    return c / std::sqrt(1.0 + ratio * ratio);
}

double barrier_force(const BarrierModel& model, double t, double c)
{
    model.validate(c);
    if (t < 0.0)
        throw DomainError("barrier_force: t must be >= 0");
    return model.m.magnitude() / model.tau * model.gamma0(c) * model.v0
           * std::exp(t / model.tau);
}

YieldTime yield_time(const BarrierModel& model, double c)
{
    model.validate(c);
    const double p0 = model.m.magnitude() * model.gamma0(c) * model.v0;
    const double ratio = model.tau * model.F_yield / p0;
    if (ratio <= 1.0)
        return {0.0, true};
    return {model.tau * std::log(ratio), false};
}

EmResult em_motion(const ParticleState& state, const Vec3& E, const Vec3& B, TimeSpan span,
                   const EmConfig& cfg)
{
    const double c = cfg.constants.c;
    if (!E.allFinite() || !B.allFinite())
        throw DomainError("em_motion: fields must be finite");
    const double q = state.charge;
    const double m = state.mass.value();
    const bool rel = cfg.relativistic;
    lorentz_gamma(state.velocity, c);  // rejects |v| >= c

    // Non-relativistic state [x, v]; relativistic state [x, p/m] = [x, gamma v].
    auto rhs = [=](double, std::span<const double> y, std::span<double> dy) {
        const Vec3 w(y[3], y[4], y[5]);
        Vec3 v = w;
        if (rel)
            v = w / std::sqrt(1.0 + w.squaredNorm() / (c * c));
        const Vec3 a = (q / m) * (E + v.cross(B));
        for (int d = 0; d < 3; ++d)
        {
            dy[d] = v[d];
            dy[3 + d] = a[d];
        }
    };

    const double gamma = rel ? lorentz_gamma(state.velocity, c) : 1.0;
    const std::array<double, 6> y0{state.position[0],        state.position[1],
                                   state.position[2],        gamma * state.velocity[0],
                                   gamma * state.velocity[1], gamma * state.velocity[2]};
    OdeOptions opts;
    opts.sample_times = uniform_times(span, cfg.n_samples);

    auto to_velocity = [&](const Trajectory& in) {
        if (!rel)
            return in;
        Trajectory out(6);
        out.status = in.status;
        for (std::size_t i = 0; i < in.size(); ++i)
        {
            auto y = in.state(i);
            std::array<double, 6> row{};
            const Vec3 w(y[3], y[4], y[5]);
            const Vec3 v = w / std::sqrt(1.0 + w.squaredNorm() / (c * c));
            for (int d = 0; d < 3; ++d)
            {
                row[d] = y[d];
                row[3 + d] = v[d];
            }
            out.push(in.time(i), row);
        }
        return out;
    };

    try
    {
        return EmResult{to_velocity(integrate_ode(rhs, y0, span, cfg.integrator, opts)), false,
                        {}};
    }
    catch (const IntegrationError& err)
    {
        return EmResult{to_velocity(err.partial()), true, err.what()};
    }
}

void RunawayPair::validate() const
{
    if (!(d0 > 0.0))
        throw DomainError("RunawayPair: d0 must be > 0");
    if (m_plus.is_negative() || !m_minus.is_negative())
        throw DomainError("RunawayPair: m_plus must be positive and m_minus negative");
    if (!(softening_fraction > 0.0))
        throw DomainError("RunawayPair: softening fraction must be > 0");
}

RunawayResult runaway_pair_sim(const RunawayPair& pair, TimeSpan span, const RunawayConfig& cfg)
{
    pair.validate();
    const Constants& k = cfg.constants;
    std::array<ParticleState, 2> bodies{};
    bodies[0].position = pair.d0 * Vec3::UnitX();
    bodies[0].mass = pair.m_plus;
    bodies[1].position = Vec3::Zero();
    bodies[1].mass = pair.m_minus;

    twobody::NBodyConfig nb;
    nb.relativistic = true;
    nb.collision_distance = pair.softening_fraction * pair.d0;
    nb.n_samples = cfg.n_samples;
    nb.integrator = cfg.integrator;
    nb.constants = k;
    nb.exec = kernels::Execution::serial;

    RunawayResult out;
    if (pair.coupling == PairCoupling::gravitational)
    {
        nb.coupling = {true, false};
        out.dynamical_time = std::sqrt(pair.d0 * pair.d0 * pair.d0 / (k.G * pair.m_plus.magnitude()));
    }
    else
    {
        nb.coupling = {false, true};
        bodies[0].charge = pair.q_plus;
        bodies[1].charge = pair.q_minus;
        const double qq = std::fabs(pair.q_plus * pair.q_minus);
        if (qq == 0.0)
            throw DomainError("RunawayPair: electrostatic coupling needs non-zero charges");
        out.dynamical_time = std::sqrt(k.four_pi_eps() * pair.d0 * pair.d0 * pair.d0
                                       * pair.m_plus.magnitude() / qq);
    }

    const auto res = twobody::nbody_sim(bodies, nb, span);
    out.close_approach = res.close_approach;
    out.samples.reserve(res.samples.size());
    for (std::size_t s = 0; s < res.samples.size(); ++s)
    {
        const Vec3 xp = res.position(s, 0), xm = res.position(s, 1);
        out.samples.push_back({res.samples[s].t, xp[0], xm[0], res.velocity(s, 0)[0],
                               res.velocity(s, 1)[0], (xp - xm).norm(),
                               res.samples[s].momentum[0], res.samples[s].total_energy});
    }
    return out;
}

}  // namespace negmass::reldyn
