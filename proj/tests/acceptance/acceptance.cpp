// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <sys/wait.h>

#include "gen.hpp"
#include "negmass/dirac.hpp"
#include "negmass/galilean.hpp"
#include "negmass/kernels/pair_forces.hpp"
#include "negmass/qm_twobody.hpp"
#include "negmass/reldyn.hpp"
#include "negmass/thermo.hpp"
#include "negmass/twobody.hpp"
#include "negmass/yukawa.hpp"

using namespace negmass;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
};

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

auto bisect_root(const std::function<double(double)>& f, double lo, double hi)
{
    const auto r = boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(52));
    return 0.5 * (r.first + r.second);
}

// 1 -------------------------------------------------------------------------
Outcome barrier_vs_ode()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    test::Gen g(2024);
    double worst_v = 0.0, worst_t = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        reldyn::BarrierModel m;
        m.m = SignedMass(Sign::negative, g.log_uniform(0.1, 10.0));
        m.v0 = g.uniform(0.01, 0.95);
        m.tau = g.log_uniform(0.1, 10.0);
        const double p0 = m.m.magnitude() * m.v0 / std::sqrt(1.0 - m.v0 * m.v0);
        m.F_yield = g.log_uniform(2.0, 1000.0) * p0 / m.tau;

        // dp/dt = p / tau rewritten for the velocity.
        const double tau = m.tau;
        auto rhs = [tau](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = y[0] * (1.0 - y[0] * y[0]) / tau;
        };
        const TimeSpan span{0.0, 10.0 * m.tau};
        OdeOptions opts;
        opts.sample_times = uniform_times(span, 501);
        IntegratorConfig cfg;
        cfg.rel_tol = 1e-13;
        cfg.abs_tol = 1e-15;
        const double y0[1] = {m.v0};
        const auto traj = integrate_ode(rhs, y0, span, cfg, opts);
        for (std::size_t s = 0; s < traj.size(); ++s)
        {
            const double v = reldyn::barrier_velocity(m, traj.time(s), 1.0);
            worst_v = std::max(worst_v, std::fabs(v - traj(s, 0)) / traj(s, 0));
        }

        const auto yt = reldyn::yield_time(m, 1.0);
        const double root = bisect_root(
            [&](double t) { return reldyn::barrier_force(m, t, 1.0) - m.F_yield; }, 0.0,
            50.0 * m.tau);
        worst_t = std::max(worst_t, std::fabs(yt.time - root));
        out.require(!yt.immediate, "unexpected immediate yield");
    }
    const double elapsed = seconds_since(t0);
    out.require(worst_v < 1e-8, "velocity deviation " + sci(worst_v));
    out.require(worst_t < 1e-10, "yield time deviation " + sci(worst_t));
    out.require(elapsed < 10.0, "runtime " + sci(elapsed) + " s");
    out.note = out.pass ? "max dv/v " + sci(worst_v) + ", max dT " + sci(worst_t) + ", "
                              + sci(elapsed) + " s"
                        : out.note;
    return out;
}

// 2 -------------------------------------------------------------------------
Outcome yield_scaling()
{
    Outcome out;
    reldyn::BarrierModel m;
    m.m = SignedMass(Sign::negative, 1.0);
    m.v0 = 0.2;
    const double impulse = 40.0;  // tau * F_yield
    const double p0 = m.v0 / std::sqrt(1.0 - m.v0 * m.v0);
    std::vector<double> x, y;
    double worst_form = 0.0;
    double prev = INFINITY;
    bool decreasing = true;
    for (int i = 0; i <= 10; ++i)
    {
        m.F_yield = std::pow(10.0, 0.1 * i);
        m.tau = impulse / m.F_yield;
        const double T = reldyn::yield_time(m, 1.0).time;
        const double form = m.tau * std::log(impulse / p0);
        worst_form = std::max(worst_form, std::fabs(T - form) / form);
        decreasing = decreasing && T < prev;
        prev = T;
        x.push_back(std::log(1.0 / m.F_yield));
        y.push_back(std::log(T));
    }
    // Least-squares slope of log T against log(1/F).
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.require(std::fabs(slope - 1.0) < 1e-12, "log-slope " + sci(slope - 1.0) + " from 1");
    out.require(worst_form < 1e-12, "tau ln form deviation " + sci(worst_form));
    out.require(decreasing, "yield time not decreasing in F_yield");
    if (out.pass)
        out.note = "slope-1 = " + sci(slope - 1.0) + ", form dev " + sci(worst_form);
    return out;
}

// 3 -------------------------------------------------------------------------
Outcome runaway()
{
    Outcome out;
    reldyn::RunawayPair pair;
    pair.m_plus = SignedMass(Sign::positive, 1.0);
    pair.m_minus = SignedMass(Sign::negative, 1.0);
    pair.d0 = 1.0;
    reldyn::RunawayConfig cfg;
    cfg.n_samples = 1001;
    cfg.integrator.rel_tol = 1e-12;
    cfg.integrator.abs_tol = 1e-14;
    const double T = 1.0;  // sqrt(d0^3 / (G m+))
    const auto res = reldyn::runaway_pair_sim(pair, {0.0, 10.0 * T}, cfg);
    out.require(std::fabs(res.dynamical_time - T) < 1e-15, "dynamical time");
    double sep = 0.0, mom = 0.0;
    bool increasing = true, below_c = true;
    for (std::size_t i = 0; i < res.samples.size(); ++i)
    {
        const auto& s = res.samples[i];
        sep = std::max(sep, std::fabs(s.separation - pair.d0) / pair.d0);
        mom = std::max(mom, std::fabs(s.p_total));
        below_c = below_c && std::fabs(s.v_plus) < 1.0 && std::fabs(s.v_minus) < 1.0;
        if (i > 0)
            increasing = increasing && std::fabs(s.v_plus) > std::fabs(res.samples[i - 1].v_plus)
                         && std::fabs(s.v_minus) > std::fabs(res.samples[i - 1].v_minus);
    }
    out.require(res.samples.size() == 1001 && res.samples.back().t >= 10.0 * T,
                "did not cover 10 dynamical times");
    out.require(sep < 1e-6, "separation drift " + sci(sep));
    out.require(mom < 1e-9, "momentum " + sci(mom));
    out.require(increasing, "speeds not strictly increasing");
    out.require(below_c, "speed reached c");
    if (out.pass)
        out.note = "sep drift " + sci(sep) + ", |P| " + sci(mom) + ", final v "
                   + sci(res.samples.back().v_plus);
    return out;
}

// 4 -------------------------------------------------------------------------
Outcome chase_taxonomy()
{
    Outcome out;
    const auto k = Constants::natural();
    int agree = 0, total = 0;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int sq : {1, -1})
                for (bool gravity_dominant : {true, false})
                {
                    twobody::PairSpec p{SignedMass::from_value(s1 * 2.0),
                                        SignedMass::from_value(s2 * 0.5)};
                    const double q = gravity_dominant ? 0.2 : 4.0;
                    p.q1 = q;
                    p.q2 = sq * q;
                    p.r0 = 1.3;
                    const std::vector<double> x{0, 0, 0, p.r0, 0, 0};
                    const std::vector<double> m{p.m1.value(), p.m2.value()};
                    const std::vector<double> qs{p.q1, p.q2};
                    std::vector<double> f(6);
                    kernels::pair_forces(x, m, qs, {k.G, k.coulomb_k(), true, true}, f,
                                         kernels::Execution::serial);
                    const bool one_in = f[0] / m[0] > 0.0;
                    const bool two_in = f[3] / m[1] < 0.0;
                    const auto expected = one_in && two_in     ? twobody::InteractionKind::mutual_attraction
                                          : !one_in && !two_in ? twobody::InteractionKind::mutual_repulsion
                                                               : twobody::InteractionKind::chase;
                    const auto got = twobody::classify_interaction(p, k);
                    bool ok = got.kind == expected;
                    if (ok && got.kind == twobody::InteractionKind::chase)
                        ok = got.pursuer == (one_in ? 1 : 2);
                    agree += ok;
                    ++total;
                }
    out.require(total == 16 && agree == 16, std::to_string(agree) + "/" + std::to_string(total));
    if (out.pass)
        out.note = "16/16 cases";
    return out;
}

// 5 -------------------------------------------------------------------------
Outcome sphere()
{
    Outcome out;
    const auto k = Constants::natural();
    struct Set
    {
        double Q, M, R;
    };
    const Set sets[] = {{1.0, -0.5, 1.0}, {0.3, -1.0, 2.0}, {2.0, 1.0, 0.5}, {1.5, -1.5, 1.0},
                        {0.0, -1.0, 1.0}};
    double worst = 0.0;
    for (const auto& s : sets)
    {
        twobody::SphereSpec spec;
        spec.Q = s.Q;
        spec.M = SignedMass::from_value(s.M);
        spec.R = s.R;
        spec.n_samples = 100000;
        spec.seed = 12345;
        const double exact = sphere_self_energy(spec, k);
        const double mc = monte_carlo_self_energy(spec, k);
        const double q_only = 3.0 * s.Q * s.Q / (5.0 * k.four_pi_eps() * s.R);
        const bool cancelled = std::fabs(s.Q * s.Q - k.four_pi_eps() * k.G * s.M * s.M) < 1e-12;
        const double err = cancelled ? std::fabs(mc - exact) / q_only
                                     : std::fabs(mc - exact) / std::fabs(exact);
        worst = std::max(worst, err);
        out.require(err < 0.01, "Q=" + sci(s.Q) + " M=" + sci(s.M) + " err " + sci(err));
    }
    if (out.pass)
        out.note = "worst relative error " + sci(worst);
    return out;
}

// 6 -------------------------------------------------------------------------
Outcome thermo_tables()
{
    Outcome out;
    const auto si = Constants::si();
    for (int sm : {1, -1})
        for (int sT : {1, -1})
        {
            thermo::GasSpec gas{SignedMass::from_value(sm * electron_mass_kg), sT * 300.0, 10, 1e-3};
            const bool defined = thermo::partition_function_defined(gas);
            out.require(defined == (sm * sT > 0), "definedness for m sign " + std::to_string(sm)
                                                      + ", T sign " + std::to_string(sT));
            bool threw = false;
            try
            {
                out.require(thermo::single_species_Z(gas, si) > 0.0, "Z not positive");
            }
            catch (const DomainError&)
            {
                threw = true;
            }
            out.require(threw == !defined, "Z domain error mismatch");
        }
    for (double Tn : {-300.0, 300.0, 1.0})
        for (double Tp : {-300.0, 300.0, 1e6})
        {
            const thermo::GasSpec neg{SignedMass::from_value(-electron_mass_kg), Tn, 5, 1e-3};
            const thermo::GasSpec pos{SignedMass::from_value(electron_mass_kg), Tp, 7, 1e-3};
            out.require(thermo::mixture_equilibrium(neg, pos).admissible
                            == thermo::TemperatureSet::zero_only,
                        "mixture not {0}");
        }
    if (out.pass)
        out.note = "4-case Z table, 9 mixtures -> {0}";
    return out;
}

// 7 -------------------------------------------------------------------------
Outcome galilean_grid()
{
    Outcome out;
    const auto psi = GridWavefunction::gaussian(Grid1D::spanning(-100, 100, 2048), 0.0, 1.0, 1.0);
    double worst = 0.0, phase_err = 0.0;
    double phases[2];
    int idx = 0;
    for (double m : {1.0, -1.0})
    {
        const auto M = SignedMass::from_value(m);
        const auto e = galilean::ehrenfest_check(M, psi, {0.0, 10.0});
        worst = std::max(worst, e.max_residual);
        const auto w = galilean::weyl_phase(M, 0.7, 0.3, psi);
        phase_err = std::max(phase_err, std::fabs(w.phase - m * 0.7 * 0.3));
        phases[idx++] = w.phase;
    }
    out.require(worst < 1e-6, "Ehrenfest residual " + sci(worst));
    out.require(phase_err < 1e-10, "Weyl phase error " + sci(phase_err));
    out.require(phases[0] > 0.0 && phases[1] < 0.0 && std::fabs(phases[0] + phases[1]) < 1e-10,
                "phase does not flip with M");
    if (out.pass)
        out.note = "Ehrenfest " + sci(worst) + ", phase err " + sci(phase_err);
    return out;
}

// 8 -------------------------------------------------------------------------
Outcome qm_two_body()
{
    Outcome out;
    double residual = 0.0;
    for (int sa : {1, -1})
        for (int sb : {1, -1})
        {
            qm_twobody::QuantaPair p;
            p.m_a = SignedMass::from_value(sa * 1.0);
            p.m_b = SignedMass::from_value(sb * 1.0);
            const bool bound = qm_twobody::bound_state_exists(p);
            out.require(bound == (sa * sb > 0), "bound state for signs " + std::to_string(sa) + ","
                                                    + std::to_string(sb));
            if (sa * sb > 0 && sa > 0)
            {
                const auto z = qm_twobody::relative_eigenstates(p);
                const double K = 2.0 * 2.0 * M_PI / p.grid.length();
                residual = qm_twobody::separation_residual(p, z[0], K).residual;
                out.require(residual < 1e-6, "separation residual " + sci(residual));
            }
        }
    if (out.pass)
        out.note = "separation residual " + sci(residual) + ", 4-case table";
    return out;
}

// 9 -------------------------------------------------------------------------
Outcome dirac_suite()
{
    using namespace dirac;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    out.require(algebra_residuals(dirac_matrices()).max() < 1e-15, "algebra residual");

    const auto found = mass_inversion_search();
    const auto beta = dirac_matrices().beta;
    out.require(found.size() == 2 && max_abs(found[0].matrix - beta) == 0.0
                    && max_abs(found[1].matrix + beta) == 0.0,
                "mass inversion search is not {+beta, -beta}");

    test::Gen g(9);
    double res = 0.0, norm = 0.0, adj = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const Vec3 p = g.vec(2.0);
        for (double spin : {0.5, -0.5})
        {
            for (auto m : {SignedMass(Sign::positive, 1.0), SignedMass(Sign::negative, 1.0)})
            {
                const auto u = free_bispinor(p, spin, m);
                res = std::max(res, dirac_residual(u));
                norm = std::max(norm, std::fabs(u.components.squaredNorm() - u.omega / m.magnitude()));
            }
            adj = std::max(adj, std::abs(orthogonality_report(p, spin).adjoint));
        }
    }
    out.require(res < 1e-12, "Dirac residual " + sci(res));
    out.require(norm < 1e-14, "normalization " + sci(norm));
    out.require(adj < 1e-12, "adjoint bilinear " + sci(adj));

    const auto lim = rest_frame_limit(SignedMass(Sign::negative, 1.0), Vec3::UnitX(), 0.5,
                                      {0.1, 0.05, 0.025, 0.0125, 0.00625});
    Spinor target;
    target << 0, 0, 0, 1;
    const double lim_err = (lim.limit - target).norm();
    out.require(lim_err < 1e-6, "rest limit off by " + sci(lim_err));
    out.require(std::fabs(lim.order - 1.0) < 0.1, "rest limit order " + sci(lim.order));

    const auto rest = orthogonality_report(Vec3::Zero(), 0.5);
    out.require(std::abs(rest.plain) < 1e-12, "plain product at rest " + sci(std::abs(rest.plain)));

    MomentumGrid grid;
    grid.n = 64;
    grid.center = Vec3(2.5, -2.0, 2.2);
    grid.h = 6.0 / 63.0;
    const auto field = gaussian_test_field(grid, grid.center, 0.5);
    const auto gen = generators(grid, SignedMass(Sign::negative, 1.0), field);
    out.require(gen.spin_algebra < 1e-15 && gen.rotation_algebra < 1e-4 && gen.rotation_boost < 1e-4,
                "generator algebra " + sci(gen.rotation_algebra) + ", " + sci(gen.rotation_boost));

    const double elapsed = seconds_since(t0);
    out.require(elapsed < 5.0, "runtime " + sci(elapsed) + " s");
    if (out.pass)
        out.note = "residual " + sci(res) + ", adjoint " + sci(adj) + ", limit order "
                   + sci(lim.order) + ", " + sci(elapsed) + " s";
    return out;
}

// 10 ------------------------------------------------------------------------
Outcome kg_table()
{
    Outcome out;
    int ok = 0;
    for (int lambda : {1, -1})
        for (int s0 : {1, -1})
        {
            dirac::KGPlaneWave w{Vec3(0.6, 0.0, 0.8), s0 * std::sqrt(2.0), lambda, 1.0};
            const auto d = dirac::kg_densities(w);
            ok += (d.rho > 0.0) == (s0 == lambda);
        }
    out.require(ok == 4, std::to_string(ok) + "/4");
    if (out.pass)
        out.note = "4/4 sign combinations";
    return out;
}

// 11 ------------------------------------------------------------------------
Outcome yukawa_checks()
{
    Outcome out;
    const double bound_ueV = yukawa::mass_bound_for_range(1.0) * 1e6;
    out.require(std::fabs(bound_ueV - 0.2) / 0.2 < 0.02, "mass bound " + sci(bound_ueV) + " ueV");
    double worst = 0.0;
    for (double mu : {0.25, 1.0, 3.0})
    {
        yukawa::YukawaSpec s{SignedMass(Sign::negative, mu), 1.0};
        // Stationary point of ln|V| from an 8th-order difference of potential().
        auto dlog = [&](double r) {
            static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
            const double h = 0.01 * r;
            double d = 0.0;
            for (int j = 0; j < 4; ++j)
                d += w[j] * (std::log(std::fabs(yukawa::potential(s, r + (j + 1) * h)))
                             - std::log(std::fabs(yukawa::potential(s, r - (j + 1) * h))));
            return d / h;
        };
        const double r_num = bisect_root(dlog, 0.2 / mu, 5.0 / mu);
        const double err = std::fabs(r_num - yukawa::turning_point(mu)) / yukawa::turning_point(mu);
        worst = std::max(worst, err);
    }
    out.require(worst < 1e-10, "turning point deviation " + sci(worst));
    if (out.pass)
        out.note = "bound " + sci(bound_ueV) + " ueV, turning point dev " + sci(worst);
    return out;
}

// 12 ------------------------------------------------------------------------
int run_cli(const std::string& args)
{
    const std::string cmd = std::string(NEGMASS_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_determinism()
{
    Outcome out;
    const fs::path root = fs::temp_directory_path() / "negmass_acceptance_cli";
    fs::remove_all(root);
    fs::create_directories(root / "good");
    {
        std::ofstream(root / "good" / "sphere.toml") << "name = \"ball\"\nkind = \"sphere\"\nseed = 77\n"
                                                        "[sphere]\nQ = 2.0\nsamples = 20000\n";
        std::ofstream(root / "good" / "nbody.toml") << "name = \"trio\"\nkind = \"nbody\"\nseed = 3\n"
                                                       "[nbody]\nmasses = [1, -0.5, 2]\n"
                                                       "positions = [0, 0, 0, 3, 0, 0, 0, 4, 0]\n"
                                                       "velocities = [0, 0, 0, 0, 0.1, 0, -0.1, 0, 0]\n"
                                                       "duration = 2\nn_samples = 41\n";
    }
    const std::string dir = (root / "good").string();
    const int s1 = run_cli("suite " + dir + " --out-dir " + (root / "a").string());
    const int s2 = run_cli("suite " + dir + " --out-dir " + (root / "b").string());
    out.require(s1 == 0 && s2 == 0, "passing suite exit status " + std::to_string(s1));
    const char* files[] = {"trio/nbody.csv", "trio/report.json", "ball/report.json"};
    for (const char* f : files)
    {
        const auto a = slurp(root / "a" / f), b = slurp(root / "b" / f);
        out.require(!a.empty() && a == b, std::string(f) + " differs between runs");
    }

    fs::create_directories(root / "mixed");
    fs::copy(root / "good" / "sphere.toml", root / "mixed" / "sphere.toml");
    std::ofstream(root / "mixed" / "strict.toml") << "name = \"strict\"\nkind = \"yukawa\"\n"
                                                     "[yukawa]\ntol_turning = 1e-30\n";
    const int s3 = run_cli("suite " + (root / "mixed").string() + " --out-dir " + (root / "c").string());
    out.require(s3 == 1, "suite with a failing assertion exited " + std::to_string(s3));
    if (out.pass)
        out.note = "CSV and reports byte-identical; failing suite exits 1";
    return out;
}

}  // namespace

int main()
{
    struct Criterion
    {
        const char* name;
        Outcome (*check)();
    };
    const Criterion criteria[] = {
        {"barrier closed form vs ODE", barrier_vs_ode},
        {"yield time scaling", yield_scaling},
        {"runaway pair", runaway},
        {"chase taxonomy", chase_taxonomy},
        {"sphere self-energy", sphere},
        {"thermo sign tables", thermo_tables},
        {"galilean grid", galilean_grid},
        {"two quanta", qm_two_body},
        {"dirac suite", dirac_suite},
        {"Klein-Gordon sign table", kg_table},
        {"yukawa", yukawa_checks},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria)
    {
        ++index;
        Outcome o;
        try
        {
            o = c.check();
        }
        catch (const std::exception& e)
        {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
