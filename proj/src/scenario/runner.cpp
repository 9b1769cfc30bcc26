#include "negmass/scenario/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <json.hpp>

#include "negmass/dirac.hpp"
#include "negmass/effective_mass.hpp"
#include "negmass/galilean.hpp"
#include "negmass/qm_twobody.hpp"
#include "negmass/reldyn.hpp"
#include "negmass/scenario/output.hpp"
#include "negmass/thermo.hpp"
#include "negmass/twobody.hpp"
#include "negmass/yukawa.hpp"

namespace negmass::scenario {

std::string to_string(Status s)
{
    switch (s)
    {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::report_only: return "report-only";
    }
    return "unknown";
}

std::filesystem::path default_out_dir()
{
    const char* env = std::getenv("NEGMASS_OUT_DIR");
    return env && *env ? std::filesystem::path(env) : std::filesystem::path("out");
}

bool SuiteReport::ok() const noexcept
{
    if (!invalid.empty())
        return false;
    return std::none_of(runs.begin(), runs.end(),
                        [](const RunReport& r) { return r.status == Status::fail; });
}

namespace {

using nlohmann::json;

json metric_json(const Metric& m)
{
    json j;
    j["name"] = m.name;
    j["value"] = m.value;
    j["tolerance"] = m.tolerance ? json(*m.tolerance) : json(nullptr);
    j["status"] = to_string(m.status);
    return j;
}

}  // namespace

std::string report_json(const RunReport& r)
{
    json j;
    j["name"] = r.name;
    j["kind"] = r.kind;
    j["seed"] = r.seed;
    j["status"] = to_string(r.status);
    j["metrics"] = json::array();
    for (const auto& m : r.metrics)
        j["metrics"].push_back(metric_json(m));
    j["details"] = json::object();
    for (const auto& [k, v] : r.details)
        j["details"][k] = v;
    j["artifacts"] = r.artifacts;
    j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
    return j.dump(2) + "\n";
}

namespace {

/// Collects metrics and artifacts for one run.
class Context
{
  public:
    Context(const Scenario& s, const RunOptions& o, RunReport& r) : s_(s), o_(o), r_(r) {}

    const Scenario& s() const { return s_; }
    double num(const char* key) const { return s_.number(key); }
    std::size_t count(const char* key) const
    {
        const auto v = s_.integer(key);
        if (v < 0)
            throw DomainError(s_.kind + "." + key + " must be non-negative");
        return static_cast<std::size_t>(v);
    }
    Vec3 vec3(const char* key) const
    {
        const auto& a = s_.array(key);
        if (a.size() != 3)
            throw DomainError(s_.kind + "." + key + " must have three entries");
        return {a[0], a[1], a[2]};
    }

    /// Passes when value <= tolerance * scale.
    void check(const std::string& name, double value, double tolerance)
    {
        const double tol = tolerance * o_.tolerance_scale;
        const bool ok = value <= tol;  // false for NaN
        r_.metrics.push_back({name, value, tol, ok ? Status::pass : Status::fail});
    }
    /// A condition as a mismatch count that must stay at zero.
    void check_flag(const std::string& name, bool ok)
    {
        r_.metrics.push_back({name, ok ? 0.0 : 1.0, 0.0, ok ? Status::pass : Status::fail});
    }
    void report(const std::string& name, double value)
    {
        r_.metrics.push_back({name, value, std::nullopt, Status::report_only});
    }
    void detail(const std::string& key, std::string value) { r_.details[key] = std::move(value); }

    void csv(const std::string& file, const CsvTable& table)
    {
        if (s_.output.csv)
            write(file, table.text());
    }

  private:
    void write(const std::string& file, const std::string& contents)
    {
        const auto rel = std::filesystem::path(s_.name) / file;
        write_atomic(o_.out_dir / rel, contents);
        r_.artifacts.push_back(rel.generic_string());
    }

    const Scenario& s_;
    const RunOptions& o_;
    RunReport& r_;
};

double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------

void run_bubble(Context& c)
{
    const effective_mass::BubbleSpec spec{c.num("gas_density"), c.num("fluid_density"),
                                          c.num("volume"), c.num("g")};
    const auto m = effective_mass::bubble_effective_mass(spec);
    c.report("effective_mass", m.effective);
    c.report("bare_mass", m.bare);
    c.report("net_force", m.net_force);
    c.check("force_balance", std::fabs(m.net_force - m.effective * spec.g) / std::fabs(m.net_force),
            c.num("tol_force"));
    c.detail("effective_sign", m.effective < 0.0 ? "negative" : "non-negative");
}

void run_band(Context& c)
{
    effective_mass::BandSpec spec{};
    spec.E0 = c.num("E0");
    spec.C = c.num("C");
    spec.k0 = c.num("k0");
    spec.zone_width = c.num("zone_width");
    spec.neighborhood_fraction = c.num("neighborhood_fraction");
    spec.k_initial = c.num("k_initial");
    const auto tr = effective_mass::band_dynamics(spec, c.num("field"), {0.0, c.num("duration")},
                                                  c.count("n_samples"), c.s().integrator);
    const double m_eff = -tr.effective_mass;
    const double expected = tr.force / m_eff;
    double worst = 0.0;
    CsvTable csv({"t", "k", "v", "a"});
    for (const auto& smp : tr.samples)
    {
        worst = std::max(worst, std::fabs(smp.acceleration - expected) / std::fabs(expected));
        csv.add_row({smp.t, smp.k, smp.velocity, smp.acceleration});
    }
    c.report("effective_mass", m_eff);
    c.report("force", tr.force);
    c.report("k_final", tr.samples.back().k);
    c.check("acceleration_vs_force", worst, c.num("tol_acceleration"));
    c.csv("band.csv", csv);
}

void run_barrier(Context& c)
{
    const Constants k = Constants::natural();
    reldyn::BarrierModel model;
    model.m = SignedMass::from_value(c.num("mass"));
    model.v0 = c.num("v0");
    model.tau = c.num("tau");
    model.F_yield = c.num("F_yield");
    model.validate(k.c);

    const TimeSpan span{0.0, c.num("duration_taus") * model.tau};
    const std::size_t n = c.count("n_samples");
    // Oracle: dv/dt = v (1 - v^2/c^2) / tau, the velocity form of dp/dt = p/tau.
    const double tau = model.tau, cc = k.c;
    auto rhs = [tau, cc](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[0] * (1.0 - y[0] * y[0] / (cc * cc)) / tau;
    };
    OdeOptions opts;
    opts.sample_times = uniform_times(span, n);
    IntegratorConfig ic = c.s().integrator;
    ic.rel_tol = std::min(ic.rel_tol, 1e-12);
    ic.abs_tol = std::min(ic.abs_tol, 1e-14);
    const double y0[1] = {model.v0};
    const auto traj = integrate_ode(rhs, y0, span, ic, opts);

    CsvTable csv({"t", "v", "F"});
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
    {
        const double t = traj.time(i);
        const double v = reldyn::barrier_velocity(model, t, k.c);
        worst = std::max(worst, std::fabs(v - traj(i, 0)) / traj(i, 0));
        csv.add_row({t, v, reldyn::barrier_force(model, t, k.c)});
    }
    c.check("velocity_vs_ode", worst, c.num("tol_velocity"));

    const auto yt = reldyn::yield_time(model, k.c);
    c.report("yield_time", yt.time);
    c.detail("yield", yt.immediate ? "immediate" : "delayed");
    if (!yt.immediate)
    {
        const double fy = model.F_yield;
        auto f = [&](double t) { return reldyn::barrier_force(model, t, k.c) - fy; };
        double hi = model.tau;
        while (f(hi) < 0.0)
            hi *= 2.0;
        const auto root = boost::math::tools::bisect(f, 0.0, hi,
                                                     boost::math::tools::eps_tolerance<double>(52));
        c.check("yield_time_vs_bisection", std::fabs(0.5 * (root.first + root.second) - yt.time),
                c.num("tol_yield"));
    }
    c.csv("barrier.csv", csv);
}

void run_empair(Context& c)
{
    reldyn::EmConfig cfg;
    cfg.relativistic = c.s().flag("relativistic");
    cfg.n_samples = c.count("n_samples");
    cfg.integrator = c.s().integrator;
    ParticleState a;
    a.position = c.vec3("position");
    a.velocity = c.vec3("velocity");
    a.mass = SignedMass::from_value(c.num("mass"));
    a.charge = c.num("charge");
    ParticleState b = a;
    b.mass = -a.mass;
    b.charge = -a.charge;
    const Vec3 E = c.vec3("E"), B = c.vec3("B");
    const TimeSpan span{0.0, c.num("duration")};
    const auto ra = reldyn::em_motion(a, E, B, span, cfg);
    const auto rb = reldyn::em_motion(b, E, B, span, cfg);
    if (ra.blow_up || rb.blow_up)
        throw NumericalError(ra.blow_up ? ra.message : rb.message);

    CsvTable csv({"t", "x", "y", "z", "vx", "vy", "vz"});
    double diff = 0.0, speed_drift = 0.0;
    const double v0 = a.velocity.norm();
    for (std::size_t i = 0; i < ra.trajectory.size(); ++i)
    {
        const auto ya = ra.trajectory.state(i), yb = rb.trajectory.state(i);
        std::vector<double> row{ra.trajectory.time(i)};
        for (std::size_t d = 0; d < 6; ++d)
        {
            diff = std::max(diff, std::fabs(ya[d] - yb[d]));
            row.push_back(ya[d]);
        }
        if (v0 > 0.0)
        {
            const double v = std::sqrt(ya[3] * ya[3] + ya[4] * ya[4] + ya[5] * ya[5]);
            speed_drift = std::max(speed_drift, std::fabs(v - v0) / v0);
        }
        csv.add_row(row);
    }
    c.check("charge_mass_equivalence", diff, c.num("tol_equivalence"));
    if (E.isZero() && v0 > 0.0)
        c.check("speed_drift", speed_drift, c.num("tol_speed"));
    else
        c.report("speed_drift", speed_drift);
    c.csv("empair.csv", csv);
}

void run_runaway(Context& c)
{
    const Constants k = Constants::natural();
    reldyn::RunawayPair pair;
    pair.m_plus = SignedMass::from_value(c.num("m_plus"));
    pair.m_minus = SignedMass::from_value(c.num("m_minus"));
    pair.d0 = c.num("d0");
    pair.coupling = c.s().text("coupling") == "gravitational" ? reldyn::PairCoupling::gravitational
                                                              : reldyn::PairCoupling::electrostatic;
    pair.q_plus = c.num("q_plus");
    pair.q_minus = c.num("q_minus");
    pair.softening_fraction = c.num("softening_fraction");
    pair.validate();

    // Dynamical time first, to size the span.
    reldyn::RunawayConfig cfg;
    cfg.n_samples = 2;
    cfg.integrator = c.s().integrator;
    const double t_dyn = reldyn::runaway_pair_sim(pair, {0.0, 1e-12}, cfg).dynamical_time;
    cfg.n_samples = c.count("n_samples");
    const auto res = reldyn::runaway_pair_sim(pair, {0.0, c.num("duration_dyn") * t_dyn}, cfg);

    const double scale_p = pair.m_plus.magnitude() * k.c;
    const double scale_e = pair.m_plus.magnitude() * k.c * k.c;
    const double E0 = res.samples.front().E_total;
    double sep = 0.0, mom = 0.0, energy = 0.0;
    bool increasing = true, subluminal = true;
    CsvTable csv({"t", "x_plus", "x_minus", "v_plus", "v_minus", "p_total", "E_total"});
    for (std::size_t i = 0; i < res.samples.size(); ++i)
    {
        const auto& s = res.samples[i];
        sep = std::max(sep, std::fabs(s.separation - pair.d0) / pair.d0);
        mom = std::max(mom, std::fabs(s.p_total) / scale_p);
        energy = std::max(energy, std::fabs(s.E_total - E0) / scale_e);
        subluminal = subluminal && std::fabs(s.v_plus) < k.c && std::fabs(s.v_minus) < k.c;
        if (i > 0)
        {
            const auto& p = res.samples[i - 1];
            increasing = increasing && std::fabs(s.v_plus) > std::fabs(p.v_plus)
                         && std::fabs(s.v_minus) > std::fabs(p.v_minus);
        }
        csv.add_row({s.t, s.x_plus, s.x_minus, s.v_plus, s.v_minus, s.p_total, s.E_total});
    }
    c.report("dynamical_time", t_dyn);
    c.report("final_speed", std::fabs(res.samples.back().v_plus));
    c.check("separation_drift", sep, c.num("tol_separation"));
    c.check("momentum", mom, c.num("tol_momentum"));
    c.check("energy_drift", energy, c.num("tol_energy"));
    c.check_flag("speeds_increasing", increasing);
    c.check_flag("speeds_below_c", subluminal);
    c.detail("close_approach", res.close_approach ? "yes" : "no");
    c.csv("runaway.csv", csv);
}

void run_pair(Context& c)
{
    const Constants k = Constants::natural();
    twobody::PairSpec spec{SignedMass::from_value(c.num("m1")), SignedMass::from_value(c.num("m2")),
                           c.num("q1"), c.num("q2"), c.num("r0"), 0.0};
    const auto cls = twobody::classify_interaction(spec, k);
    c.detail("interaction", twobody::to_string(cls.kind));
    if (cls.kind == twobody::InteractionKind::chase)
    {
        c.detail("pursuer", std::to_string(cls.pursuer));
        c.detail("direction", cls.direction.x() > 0 ? "+x" : "-x");
    }
    try
    {
        c.report("reduced_mass", twobody::reduced_mass(spec));
    }
    catch (const twobody::InfiniteReducedMass&)
    {
        c.detail("reduced_mass", "infinite");
    }
    const double r = spec.r0, h = 1e-4 * r;
    const double fd = -(twobody::pair_potential(spec, r + h, k) - twobody::pair_potential(spec, r - h, k))
                      / (2.0 * h);
    const double f = twobody::pair_radial_force(spec, r, k);
    c.report("radial_force", f);
    c.report("a1_toward", cls.a1_toward);
    c.report("a2_toward", cls.a2_toward);
    c.check("force_vs_potential", std::fabs(f - fd) / std::max(std::fabs(f), 1e-300),
            c.num("tol_force"));
}

void run_sphere(Context& c)
{
    const Constants k = Constants::natural();
    twobody::SphereSpec spec;
    spec.Q = c.num("Q");
    spec.M = SignedMass::from_value(c.num("M"));
    spec.R = c.num("R");
    spec.n_samples = c.count("samples");
    spec.seed = c.s().seed;
    const double exact = twobody::sphere_self_energy(spec, k);
    const double mc = twobody::monte_carlo_self_energy(spec, k);
    const double charge_only = 3.0 * spec.Q * spec.Q / (5.0 * k.four_pi_eps() * spec.R);
    c.report("closed_form", exact);
    c.report("monte_carlo", mc);
    c.check("relative_error", std::fabs(mc - exact) / std::max(std::fabs(exact), charge_only),
            c.num("tol_relative"));
}

void run_nbody(Context& c)
{
    const auto& masses = c.s().array("masses");
    const auto& charges = c.s().array("charges");
    const auto& pos = c.s().array("positions");
    const auto& vel = c.s().array("velocities");
    const std::size_t n = masses.size();
    if (pos.size() != 3 * n || vel.size() != 3 * n || (!charges.empty() && charges.size() != n))
        throw DomainError("nbody: positions and velocities need 3 entries per mass, charges one");
    std::vector<ParticleState> states(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        states[i].mass = SignedMass::from_value(masses[i]);
        states[i].charge = charges.empty() ? 0.0 : charges[i];
        states[i].position = Vec3(pos[3 * i], pos[3 * i + 1], pos[3 * i + 2]);
        states[i].velocity = Vec3(vel[3 * i], vel[3 * i + 1], vel[3 * i + 2]);
    }
    twobody::NBodyConfig cfg;
    cfg.coupling = {c.s().flag("gravity"), c.s().flag("coulomb")};
    cfg.relativistic = c.s().flag("relativistic");
    cfg.collision_distance = c.num("collision_distance");
    cfg.n_samples = c.count("n_samples");
    cfg.integrator = c.s().integrator;
    const auto res = twobody::nbody_sim(states, cfg, {0.0, c.num("duration")});

    const auto& s0 = res.samples.front();
    double scale_e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale_e += std::fabs(masses[i]) * (cfg.relativistic ? 1.0 : states[i].velocity.squaredNorm());
    scale_e = std::max({scale_e, std::fabs(s0.potential), std::fabs(s0.total_energy), 1e-300});
    double scale_p = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale_p += std::fabs(masses[i]);

    double e_drift = 0.0, p_drift = 0.0;
    CsvTable csv({"t", "kinetic", "potential", "total_energy", "px", "py", "pz"});
    for (const auto& s : res.samples)
    {
        e_drift = std::max(e_drift, std::fabs(s.total_energy - s0.total_energy) / scale_e);
        p_drift = std::max(p_drift, (s.momentum - s0.momentum).norm() / scale_p);
        csv.add_row({s.t, s.kinetic, s.potential, s.total_energy, s.momentum[0], s.momentum[1],
                     s.momentum[2]});
    }
    c.check("energy_drift", e_drift, c.num("tol_energy"));
    c.check("momentum_drift", p_drift, c.num("tol_momentum"));
    if (res.samples.size() >= 3)
    {
        const auto v = twobody::virial_diagnostic(res);
        c.report("virial_ratio", v.ratio);
        c.detail("stationary", v.stationary ? "yes" : "no");
        c.detail("runaway", v.runaway ? "yes" : "no");
    }
    c.detail("close_approach", res.close_approach ? "yes" : "no");
    c.csv("nbody.csv", csv);
}

void run_thermo(Context& c)
{
    const Constants k = Constants::si();
    thermo::GasSpec gas{SignedMass::from_value(c.num("mass")), c.num("T"), c.count("N"),
                        c.num("volume")};
    thermo::GasSpec other{SignedMass::from_value(c.num("other_mass")), c.num("other_T"),
                          c.count("other_N"), c.num("volume")};
    const bool defined = thermo::partition_function_defined(gas);
    c.detail("partition_function", defined ? "defined" : "undefined");
    if (defined)
        c.report("Z", thermo::single_species_Z(gas, k));
    const auto mix = gas.m.is_negative() ? thermo::mixture_equilibrium(gas, other)
                                         : thermo::mixture_equilibrium(other, gas);
    c.detail("admissible_temperatures", thermo::to_string(mix.admissible));
    c.detail("thermodynamically_isolated", mix.thermodynamically_isolated ? "yes" : "no");

    const std::size_t n = c.count("points");
    if (n < 2)
        throw DomainError("thermo.points must be >= 2");
    std::vector<double> U(n);
    const double a = c.num("U_from"), b = c.num("U_to");
    for (std::size_t i = 0; i < n; ++i)
        U[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto curve = thermo::entropy_slope(U, gas, k);

    CsvTable csv({"U", "S", "dS_dU"});
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double d = 1e-4 * std::fabs(U[i]);
        const std::vector<double> pair{U[i] - d, U[i] + d};
        const auto local = thermo::entropy_slope(pair, gas, k);
        const double fd = (local.S[1] - local.S[0]) / (2.0 * d);
        worst = std::max(worst, std::fabs(fd - curve.dS_dU[i]) / std::fabs(curve.dS_dU[i]));
        csv.add_row({curve.U[i], curve.S[i], curve.dS_dU[i]});
    }
    c.check("slope_vs_differences", worst, c.num("tol_slope"));
    c.report("temperature_first", curve.T.front());
    c.report("temperature_last", curve.T.back());
    c.csv("thermo.csv", csv);
}

void run_galilean(Context& c)
{
    const SignedMass M = SignedMass::from_value(c.num("mass"));
    const Grid1D grid = Grid1D::spanning(c.num("x_min"), c.num("x_max"), c.count("points"));
    grid.validate();
    const auto psi = GridWavefunction::gaussian(grid, c.num("x0"), c.num("sigma"), c.num("k0"));
    galilean::EhrenfestConfig cfg;
    cfg.n_samples = c.count("n_samples");
    const auto e = galilean::ehrenfest_check(M, psi, {0.0, c.num("duration")}, cfg);
    c.check("ehrenfest_residual", e.max_residual, c.num("tol_ehrenfest"));
    c.report("norm_drift", e.max_norm_drift);
    c.report("mean_x_final", e.mean_x.back());
    const auto w = galilean::weyl_phase(M, c.num("Xi"), c.num("v"), psi);
    c.report("weyl_phase", w.phase);
    c.report("weyl_expected", w.expected);
    c.check("weyl_phase_error", std::fabs(w.phase - w.expected), c.num("tol_phase"));
}

void run_qm2(Context& c)
{
    qm_twobody::QuantaPair pair;
    pair.m_a = SignedMass::from_value(c.num("m_a"));
    pair.m_b = SignedMass::from_value(c.num("m_b"));
    pair.kappa = c.num("kappa");
    pair.softening = c.num("softening");
    pair.grid = Grid1D::spanning(c.num("x_min"), c.num("x_max"), c.count("points"));
    const auto sep = qm_twobody::separate(pair);
    c.report("total_mass", sep.total_mass);
    c.report("reduced_mass", sep.reduced_mass);
    c.detail("interaction", sep.attractive() ? "attractive" : "repulsive");

    qm_twobody::EigenConfig cfg;
    cfg.n_modes = c.count("modes");
    cfg.residual_tol = c.num("tol_eigen");
    const auto modes = qm_twobody::relative_eigenstates(pair, cfg);
    const bool bound = modes.front().energy < 0.0;
    c.detail("bound_state", bound ? "yes" : "no");
    c.check_flag("bound_iff_attractive", bound == sep.attractive());

    CsvTable ev({"mode", "energy", "residual"});
    std::vector<std::string> header{"x"};
    for (std::size_t m = 0; m < modes.size(); ++m)
    {
        ev.add_row({static_cast<double>(m), modes[m].energy, modes[m].residual});
        header.push_back("re" + std::to_string(m));
        header.push_back("im" + std::to_string(m));
    }
    const Grid1D rg = qm_twobody::relative_grid(pair);
    CsvTable wf(header);
    for (std::size_t i = 0; i < rg.n; ++i)
    {
        std::vector<double> row{rg.x(i)};
        for (const auto& m : modes)
        {
            row.push_back(m.samples[i].real());
            row.push_back(m.samples[i].imag());
        }
        wf.add_row(row);
    }
    c.report("ground_energy", modes.front().energy);
    const auto res = qm_twobody::separation_residual(pair, modes.front(), c.num("com_wavenumber"));
    c.check("separation_residual", res.residual, c.num("tol_separation"));
    c.csv("eigenvalues.csv", ev);
    c.csv("wavefunctions.csv", wf);
}

void run_dirac(Context& c)
{
    using namespace dirac;
    const double am = c.num("abs_mass");
    const double spin = c.num("spin");
    const SignedMass plus(Sign::positive, am), minus(Sign::negative, am);

    c.check("algebra", algebra_residuals(dirac_matrices()).max(), c.num("tol_algebra"));

    const auto found = mass_inversion_search();
    std::string names;
    for (const auto& f : found)
        names += (names.empty() ? "" : ",") + f.name;
    c.detail("mass_inversion", names);
    c.check_flag("mass_inversion_is_pm_beta", names == "+gamma0,-gamma0");

    std::mt19937_64 rng(c.s().seed);
    const double scale = c.num("momentum_scale");
    double dirac_res = 0.0, norm_res = 0.0, bilinear = 0.0, inversion = 0.0;
    for (std::size_t i = 0; i < c.count("random_momenta"); ++i)
    {
        const Vec3 p(scale * (2.0 * unit_uniform(rng) - 1.0), scale * (2.0 * unit_uniform(rng) - 1.0),
                     scale * (2.0 * unit_uniform(rng) - 1.0));
        for (const SignedMass m : {plus, minus})
        {
            const auto u = free_bispinor(p, spin, m);
            dirac_res = std::max(dirac_res, dirac_residual(u));
            norm_res = std::max(norm_res, std::fabs(u.components.squaredNorm() - u.omega / am)
                                              / (u.omega / am));
        }
        bilinear = std::max(bilinear, std::abs(orthogonality_report(p, spin, am).adjoint));
        for (const auto& f : found)
            inversion = std::max(inversion, inversion_residual(f.matrix, p, spin, am));
    }
    c.check("dirac_equation", dirac_res, c.num("tol_dirac"));
    c.check("normalization", norm_res, c.num("tol_norm"));
    c.check("adjoint_bilinear", bilinear, c.num("tol_bilinear"));
    c.check("mass_inversion_maps_solutions", inversion, c.num("tol_dirac"));

    const auto o = orthogonality_report(c.vec3("momentum"), spin, am);
    c.report("plain_product_abs", std::abs(o.plain));
    c.report("plain_product_expected", o.plain_expected);
    c.detail("plain_product_nonzero", o.plain_nonzero ? "yes" : "no");
    const auto rest = orthogonality_report(Vec3::Zero(), spin, am, c.vec3("rest_direction"));
    c.check("plain_product_at_rest", std::abs(rest.plain), c.num("tol_bilinear"));

    const Vec3 dir = c.vec3("rest_direction");
    const auto lim = rest_frame_limit(minus, dir, spin, c.s().array("eps"));
    const Eigen::Vector2cd upper = spin > 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    Spinor expected;
    const Vec3 n = dir.normalized();
    Eigen::Matrix2cd sn;
    sn << n.z(), std::complex<double>(n.x(), -n.y()), std::complex<double>(n.x(), n.y()), -n.z();
    expected << Eigen::Vector2cd::Zero(), sn * upper;
    c.check("rest_limit_error", (lim.limit - expected).norm(), c.num("tol_limit"));
    c.report("rest_limit_order", lim.order);
    CsvTable rf({"eps", "error", "re0", "im0", "re1", "im1", "re2", "im2", "re3", "im3"});
    for (std::size_t i = 0; i < lim.eps.size(); ++i)
    {
        const auto u = free_bispinor(lim.eps[i] * n, spin, minus).components;
        rf.add_row({lim.eps[i], lim.errors[i], u[0].real(), u[0].imag(), u[1].real(), u[1].imag(),
                    u[2].real(), u[2].imag(), u[3].real(), u[3].imag()});
    }

    MomentumGrid g;
    g.n = c.count("generator_points");
    g.center = c.vec3("generator_center");
    const double width = c.num("generator_width");
    g.h = 12.0 * width / static_cast<double>(g.n - 1);
    g.order = static_cast<int>(c.count("fd_order"));
    const auto field = gaussian_test_field(g, g.center, width);
    for (const SignedMass m : {plus, minus})
    {
        const auto rep = generators(g, m, field);
        const std::string tag = m.is_negative() ? "_negative" : "_positive";
        c.check("spin_algebra" + tag, rep.spin_algebra, c.num("tol_algebra"));
        c.check("rotation_algebra" + tag, rep.rotation_algebra, c.num("tol_generator"));
        c.check("rotation_boost" + tag, rep.rotation_boost, c.num("tol_generator"));
    }
    c.csv("rest_frame.csv", rf);
}

void run_yukawa(Context& c)
{
    yukawa::YukawaSpec spec;
    spec.carrier = SignedMass::from_value(c.num("mass"));
    spec.g = c.num("g");
    const Constants k = Constants::natural();
    const auto curve = yukawa::sample_curve(spec, c.num("r_lo"), c.num("r_hi"), c.count("points"), k);
    CsvTable csv({"r", "V", "V_coulomb"});
    for (std::size_t i = 0; i < curve.r.size(); ++i)
        csv.add_row({curve.r[i], curve.V[i], yukawa::coulomb_limit(spec, curve.r[i])});
    c.report("mass_bound_eV", yukawa::mass_bound_for_range(c.num("range_m")));
    if (spec.carrier.is_negative())
    {
        const double mu = spec.carrier.magnitude();
        const double rmin = yukawa::turning_point(mu);
        c.report("turning_point", rmin);
        // Minimiser of |V|: bisection on the sign of d ln|V| / dr, taken by an
        // 8th-order central difference with step 0.01 r.
        auto dv = [&](double r) {
            static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
            const double h = 0.01 * r;
            double d = 0.0;
            for (int j = 0; j < 4; ++j)
                d += w[j] * (std::log(std::fabs(yukawa::potential(spec, r + (j + 1) * h, k)))
                             - std::log(std::fabs(yukawa::potential(spec, r - (j + 1) * h, k))));
            return d / h;
        };
        double lo = c.num("r_lo"), hi = c.num("r_hi");
        if (dv(lo) < 0.0 && dv(hi) > 0.0)
        {
            const auto root = boost::math::tools::bisect(
                dv, lo, hi, boost::math::tools::eps_tolerance<double>(50));
            c.check("turning_point_vs_minimiser",
                    std::fabs(0.5 * (root.first + root.second) - rmin) / rmin, c.num("tol_turning"));
        }
        else
            c.detail("turning_point", "outside [r_lo, r_hi]");
    }
    c.csv("yukawa.csv", csv);
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners()
{
    static const std::map<std::string, Runner> table{
        {"band", run_band},       {"barrier", run_barrier}, {"bubble", run_bubble},
        {"dirac", run_dirac},     {"empair", run_empair},   {"galilean", run_galilean},
        {"nbody", run_nbody},     {"pair", run_pair},       {"qm2", run_qm2},
        {"runaway", run_runaway}, {"sphere", run_sphere},   {"thermo", run_thermo},
        {"yukawa", run_yukawa}};
    return table;
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const RunOptions& opts)
{
    Scenario s = scenario;
    if (opts.seed)
        s.seed = *opts.seed;
    RunReport report;
    report.name = s.name;
    report.kind = s.kind;
    report.seed = s.seed;
    const auto t0 = std::chrono::steady_clock::now();

    Context ctx(s, opts, report);
    try
    {
        const auto it = runners().find(s.kind);
        if (it == runners().end())
            throw DomainError("no runner for kind '" + s.kind + "'");
        it->second(ctx);
    }
    catch (const std::exception& e)
    {
        report.error = e.what();
    }

    if (!report.error.empty())
        report.status = Status::fail;
    else if (std::any_of(report.metrics.begin(), report.metrics.end(),
                         [](const Metric& m) { return m.status == Status::fail; }))
        report.status = Status::fail;
    else if (std::any_of(report.metrics.begin(), report.metrics.end(),
                         [](const Metric& m) { return m.status == Status::pass; }))
        report.status = Status::pass;
    else
        report.status = Status::report_only;

    if (s.output.json)
    {
        try
        {
            const auto rel = std::filesystem::path(s.name) / "report.json";
            report.artifacts.push_back(rel.generic_string());
            write_atomic(opts.out_dir / rel, report_json(report));
        }
        catch (const std::exception& e)
        {
            report.artifacts.pop_back();
            report.error = e.what();
            report.status = Status::fail;
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SuiteReport run_suite(const std::filesystem::path& dir, const RunOptions& opts)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".toml")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    SuiteReport suite;
    std::vector<Scenario> scenarios;
    std::map<std::string, std::string> seen;
    for (const auto& f : files)
    {
        std::ifstream in(f, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        try
        {
            Scenario s = parse_scenario(buf.str());
            if (seen.count(s.name))
                throw std::runtime_error("scenario name '" + s.name + "' already used by "
                                         + seen[s.name]);
            seen[s.name] = f.filename().string();
            scenarios.push_back(std::move(s));
        }
        catch (const std::exception& e)
        {
            suite.invalid.emplace_back(f.filename().string(), e.what());
        }
    }

    suite.runs.resize(scenarios.size());
    const long n = static_cast<long>(scenarios.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        suite.runs[static_cast<std::size_t>(i)] = run_scenario(scenarios[static_cast<std::size_t>(i)], opts);

    json j;
    j["ok"] = suite.ok();
    j["runs"] = json::array();
    for (const auto& r : suite.runs)
        j["runs"].push_back({{"name", r.name},
                             {"kind", r.kind},
                             {"status", to_string(r.status)},
                             {"error", r.error.empty() ? json(nullptr) : json(r.error)}});
    j["invalid"] = json::array();
    for (const auto& [file, err] : suite.invalid)
        j["invalid"].push_back({{"file", file}, {"error", err}});
    write_atomic(opts.out_dir / "suite.json", j.dump(2) + "\n");
    return suite;
}

}  // namespace negmass::scenario
