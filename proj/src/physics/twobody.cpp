#include "negmass/twobody.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "negmass/kernels/pair_forces.hpp"
#include "negmass/kernels/sphere_pairs.hpp"

namespace negmass::twobody {

void PairSpec::validate() const
{
    if (!(r0 > 0.0))
        throw DomainError("PairSpec: r0 must be > 0");
}

namespace {

double pair_coupling(const PairSpec& s, const Constants& k)
{
    // -G m1 m2 + q1 q2 / (4 pi eps)
    return -k.G * s.m1.value() * s.m2.value() + k.coulomb_k() * s.q1 * s.q2;
}

}  // namespace

double pair_potential(const PairSpec& spec, double r, const Constants& k)
{
    if (!(r > 0.0))
        throw DomainError("pair_potential: r must be > 0");
    return (-k.four_pi_eps() * k.G * spec.m1.value() * spec.m2.value() + spec.q1 * spec.q2)
           / (k.four_pi_eps() * r);
}

double pair_radial_force(const PairSpec& spec, double r, const Constants& k)
{
    if (!(r > 0.0))
        throw DomainError("pair_radial_force: r must be > 0");
    return pair_coupling(spec, k) / (r * r);
}

double reduced_mass(const PairSpec& spec)
{
    const double total = spec.m1.value() + spec.m2.value();
    if (total == 0.0)
        throw InfiniteReducedMass();
    return spec.m1.value() * spec.m2.value() / total;
}

double relative_acceleration(const PairSpec& spec, int lambda, double q, double r,
                             const Constants& k)
{
    if (!(r > 0.0))
        throw DomainError("relative_acceleration: r must be > 0");
    if (lambda != 1 && lambda != -1)
        throw DomainError("relative_acceleration: lambda must be +1 or -1");
    const double mu = reduced_mass(spec);
    const double total = spec.m1.value() + spec.m2.value();
    return -k.G * total / (r * r) + lambda * q * q / (k.four_pi_eps() * mu * r * r);
}

double equal_magnitude_separation(const PairSpec& spec, double t)
{
    return spec.v_rel0 * t + spec.r0;
}

std::string to_string(InteractionKind kind)
{
    switch (kind)
    {
    case InteractionKind::mutual_attraction: return "mutual_attraction";
    case InteractionKind::mutual_repulsion: return "mutual_repulsion";
    case InteractionKind::chase: return "chase";
    case InteractionKind::neutral: return "neutral";
    }
    return "unknown";
}

Classification classify_interaction(const PairSpec& spec, const Constants& k)
{
    spec.validate();
    const Vec3 x1 = Vec3::Zero();
    const Vec3 x2 = spec.r0 * Vec3::UnitX();
    const Vec3 r12_hat = (x2 - x1).normalized();

    const double grav = k.G * spec.m1.magnitude() * spec.m2.magnitude();
    const double coul = std::fabs(k.coulomb_k() * spec.q1 * spec.q2);
    const double coupling = pair_coupling(spec, k);

    Classification out{InteractionKind::neutral};
    if (std::fabs(coupling) <= 1e-12 * (grav + coul))
        return out;

    // F_1 = coupling (x1 - x2) / r^3, F_2 = -F_1
    const double r = spec.r0;
    const Vec3 f1 = coupling * (x1 - x2) / (r * r * r);
    const Vec3 f2 = -f1;
    const Vec3 a1 = f1 / spec.m1.value();
    const Vec3 a2 = f2 / spec.m2.value();

    out.radial_force = coupling / (r * r);
    out.a1_toward = a1.dot(r12_hat);
    out.a2_toward = a2.dot(-r12_hat);
    const bool one_in = out.a1_toward > 0.0;
    const bool two_in = out.a2_toward > 0.0;
    if (one_in && two_in)
        out.kind = InteractionKind::mutual_attraction;
    else if (!one_in && !two_in)
        out.kind = InteractionKind::mutual_repulsion;
    else
    {
        out.kind = InteractionKind::chase;
        out.pursuer = one_in ? 1 : 2;
        out.direction = (one_in ? a1 : a2).normalized();
    }
    return out;
}

void SphereSpec::validate() const
{
    if (!(R > 0.0))
        throw DomainError("SphereSpec: R must be > 0");
    if (n_samples < 2)
        throw DomainError("SphereSpec: n_samples must be >= 2");
}

double sphere_self_energy(const SphereSpec& s, const Constants& k)
{
    s.validate();
    const double M = s.M.value();
    return 3.0 * (s.Q * s.Q - k.four_pi_eps() * k.G * M * M)
           / (20.0 * std::numbers::pi * k.epsilon0 * s.R);
}

double monte_carlo_self_energy(const SphereSpec& s, const Constants& k,
                               kernels::Execution exec)
{
    s.validate();
    const double M = s.M.value();
    const double mean_inv = kernels::mean_inverse_distance(s.n_samples, s.R, s.seed, exec);
    // Uniform densities: rho rho' = Q^2 / V^2 and mu mu' = M^2 / V^2; the V^2
    // cancels against the sampling measure.
    const double charge_part = s.Q * s.Q * mean_inv;
    const double mass_part = k.four_pi_eps() * k.G * M * M * mean_inv;
    return 0.5 * (charge_part - mass_part) / k.four_pi_eps();
}

double kinetic_energy_total(std::span<const ParticleState> states, double c)
{
    double total = 0.0;
    for (const auto& s : states)
        total += lorentz_gamma_minus_one(s.velocity.norm(), c) * c * c * s.mass.magnitude();
    return total;
}

// ---------------------------------------------------------------------------

Vec3 NBodyResult::position(std::size_t sample, std::size_t body) const
{
    const auto y = trajectory.state(sample);
    return {y[3 * body], y[3 * body + 1], y[3 * body + 2]};
}

Vec3 NBodyResult::momentum(std::size_t sample, std::size_t body) const
{
    const auto y = trajectory.state(sample);
    const std::size_t off = 3 * bodies();
    return {y[off + 3 * body], y[off + 3 * body + 1], y[off + 3 * body + 2]};
}

namespace {

Vec3 velocity_of(const Vec3& p, double m, bool relativistic, double c)
{
    if (!relativistic)
        return p / m;
    const double u = p.norm() / (std::fabs(m) * c);
    return p / (m * std::sqrt(1.0 + u * u));
}

}  // namespace

Vec3 NBodyResult::velocity(std::size_t sample, std::size_t body) const
{
    return velocity_of(momentum(sample, body), masses[body].value(), relativistic, c);
}

NBodyResult nbody_sim(std::span<const ParticleState> states, const NBodyConfig& cfg,
                      TimeSpan span)
{
    const std::size_t n = states.size();
    if (n < 2)
        throw DomainError("nbody_sim: need at least two bodies");
    const Constants& k = cfg.constants;
    const double c = k.c;

    NBodyResult out;
    out.relativistic = cfg.relativistic;
    out.c = c;
    std::vector<double> m(n), q(n), y0(6 * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto& s = states[i];
        if (!s.position.allFinite() || !s.velocity.allFinite())
            throw DomainError("nbody_sim: non-finite initial state");
        out.masses.push_back(s.mass);
        out.charges.push_back(s.charge);
        m[i] = s.mass.value();
        q[i] = s.charge;
        const double gamma = cfg.relativistic ? lorentz_gamma(s.velocity, c) : 1.0;
        const Vec3 p = gamma * m[i] * s.velocity;
        for (int d = 0; d < 3; ++d)
        {
            y0[3 * i + d] = s.position[d];
            y0[3 * n + 3 * i + d] = p[d];
        }
    }

    const kernels::ForceLaw law{k.G, k.coulomb_k(), cfg.coupling.gravity, cfg.coupling.coulomb};
    const bool rel = cfg.relativistic;

    auto rhs = [&, n](double, std::span<const double> y, std::span<double> dy) {
        const auto x = y.subspan(0, 3 * n);
        const auto p = y.subspan(3 * n, 3 * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec3 pi(p[3 * i], p[3 * i + 1], p[3 * i + 2]);
            const Vec3 v = velocity_of(pi, m[i], rel, c);
            dy[3 * i] = v[0];
            dy[3 * i + 1] = v[1];
            dy[3 * i + 2] = v[2];
        }
        kernels::pair_forces(x, m, q, law, dy.subspan(3 * n, 3 * n), cfg.exec);
    };

    OdeOptions opts;
    opts.sample_times = uniform_times(span, std::max<std::size_t>(cfg.n_samples, 2));
    if (cfg.collision_distance > 0.0)
    {
        opts.observer = [&](double t, std::span<const double> y) {
            const auto cp = kernels::closest_pair(y.subspan(0, 3 * n));
            if (cp.distance < cfg.collision_distance)
            {
                out.close_approach = CloseApproach{t, cp.i, cp.j, cp.distance};
                return true;
            }
            return false;
        };
    }
    out.trajectory = integrate_ode(rhs, y0, span, cfg.integrator, opts);

    out.samples.reserve(out.trajectory.size());
    for (std::size_t s = 0; s < out.trajectory.size(); ++s)
    {
        const auto y = out.trajectory.state(s);
        NBodySample smp{out.trajectory.time(s), 0.0, 0.0, 0.0, Vec3::Zero()};
        smp.potential = kernels::pair_potential_energy(y.subspan(0, 3 * n), m, q, law, cfg.exec);
        double signed_energy = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec3 p = out.momentum(s, i);
            smp.momentum += p;
            if (rel)
            {
                const double u = p.norm() / (std::fabs(m[i]) * c);
                const double gamma = std::sqrt(1.0 + u * u);
                // gamma - 1 = u^2 / (gamma + 1)
                smp.kinetic += u * u / (gamma + 1.0) * std::fabs(m[i]) * c * c;
                signed_energy += gamma * m[i] * c * c;
            }
            else
            {
                const double e = 0.5 * p.squaredNorm() / m[i];
                smp.kinetic += std::fabs(e);
                signed_energy += e;
            }
        }
        smp.total_energy = signed_energy + smp.potential;
        out.samples.push_back(smp);
    }
    return out;
}

VirialReport virial_diagnostic(const NBodyResult& r)
{
    const auto& s = r.samples;
    if (s.size() < 3)
        throw DomainError("virial_diagnostic: need at least three samples");

    auto average = [&](std::size_t lo, std::size_t hi, auto field) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            acc += 0.5 * (field(s[i]) + field(s[i + 1])) * (s[i + 1].t - s[i].t);
        return acc / (s[hi].t - s[lo].t);
    };
    auto kin = [](const NBodySample& x) { return x.kinetic; };
    auto pot = [](const NBodySample& x) { return x.potential; };

    const std::size_t last = s.size() - 1;
    const std::size_t mid = last / 2;
    VirialReport out{};
    out.mean_kinetic = average(0, last, kin);
    out.mean_potential = average(0, last, pot);
    out.ratio = out.mean_kinetic / out.mean_potential;
    out.first_half_kinetic = average(0, mid, kin);
    out.second_half_kinetic = average(mid, last, kin);
    const double scale = std::max(std::fabs(out.first_half_kinetic),
                                  std::fabs(out.second_half_kinetic));
    out.stationary = std::fabs(out.first_half_kinetic - out.second_half_kinetic) <= 0.1 * scale;

    bool monotone = true;
    for (std::size_t i = mid; i < last; ++i)
        monotone = monotone && s[i + 1].kinetic >= s[i].kinetic;
    out.runaway = monotone && s[last].kinetic >= 2.0 * s[mid].kinetic && s[last].kinetic > 0.0;
    return out;
}

}  // namespace negmass::twobody
