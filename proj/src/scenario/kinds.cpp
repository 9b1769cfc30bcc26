#include <cstdint>
#include <string>
#include <vector>

#include "negmass/scenario/config.hpp"

namespace negmass::scenario {

namespace {

KeySpec num(std::string name, double fallback, std::string doc)
{
    return {std::move(name), ValueType::number, false, Value::of(fallback), std::move(doc), {}};
}

KeySpec count(std::string name, std::int64_t fallback, std::string doc)
{
    return {std::move(name), ValueType::integer, false, Value::of_int(fallback), std::move(doc),
            {}};
}

KeySpec flag(std::string name, bool fallback, std::string doc)
{
    return {std::move(name), ValueType::boolean, false, Value::of(fallback), std::move(doc), {}};
}

KeySpec vec(std::string name, std::vector<double> fallback, std::string doc)
{
    return {std::move(name), ValueType::number_array, false, Value::of(std::move(fallback)),
            std::move(doc), {}};
}

KeySpec pick(std::string name, std::string fallback, std::vector<std::string> choices,
             std::string doc)
{
    return {std::move(name), ValueType::string, false, Value::of(std::move(fallback)),
            std::move(doc), std::move(choices)};
}

std::vector<KindSpec> build()
{
    std::vector<KindSpec> k;

    k.push_back({"band",
                 "electron near a band maximum driven by a uniform field (SI)",
                 {num("E0", 0.0, "band energy at the maximum, J"),
                  num("C", 6.1e-39, "curvature, E = E0 - C (k - k0)^2, J m^2"),
                  num("k0", 0.0, "wavenumber of the maximum, 1/m"),
                  num("zone_width", 1e10, "reciprocal-space zone extent, 1/m"),
                  num("neighborhood_fraction", 0.1, "quadratic region as a fraction of the zone"),
                  num("k_initial", 0.0, "initial wavenumber, 1/m"),
                  num("field", 1e3, "electric field, V/m"),
                  num("duration", 1e-12, "simulated time, s"),
                  count("n_samples", 101, "output rows"),
                  num("tol_acceleration", 1e-12, "relative |a - F/m_eff|")}});

    k.push_back({"barrier",
                 "negative mass pumping momentum into a barrier (natural units)",
                 {num("mass", -1.0, "signed mass, must be negative"),
                  num("v0", 0.1, "impact speed"),
                  num("tau", 1.0, "momentum transfer time"),
                  num("F_yield", 10.0, "barrier yield force"),
                  num("duration_taus", 10.0, "simulated time in units of tau"),
                  count("n_samples", 201, "output rows"),
                  num("tol_velocity", 1e-8, "relative closed form vs ODE"),
                  num("tol_yield", 1e-10, "yield time vs bisection root")}});

    k.push_back({"bubble",
                 "gas bubble in a fluid as a negative effective mass (SI)",
                 {num("gas_density", 1.2, "kg/m^3"),
                  num("fluid_density", 1000.0, "kg/m^3"),
                  num("volume", 1e-6, "m^3"),
                  num("g", 9.80665, "m/s^2"),
                  num("tol_force", 1e-12, "relative |F - m_eff g|")}});

    k.push_back({"dirac",
                 "Dirac matrices, bispinors of both mass signs, mass inversion, generators",
                 {vec("momentum", {0.3, -0.4, 0.5}, "momentum for the bilinear table"),
                  num("spin", 0.5, "+0.5 or -0.5"),
                  num("abs_mass", 1.0, "|m|"),
                  vec("eps", {0.1, 0.05, 0.025, 0.0125, 0.00625}, "rest-frame limit sequence"),
                  vec("rest_direction", {1.0, 0.0, 0.0}, "approach direction for the limit"),
                  count("random_momenta", 100, "random momenta for the identity checks"),
                  num("momentum_scale", 2.0, "random momenta drawn from [-scale, scale]^3"),
                  count("generator_points", 64, "momentum grid points per axis"),
                  num("generator_width", 0.5, "Gaussian test field width"),
                  vec("generator_center", {2.5, -2.0, 2.2}, "Gaussian test field centre"),
                  count("fd_order", 6, "finite-difference order for d/dp"),
                  num("tol_algebra", 1e-15, ""),
                  num("tol_dirac", 1e-12, ""),
                  num("tol_norm", 1e-14, ""),
                  num("tol_bilinear", 1e-12, ""),
                  num("tol_limit", 1e-6, "distance of the limit from the expected spinor"),
                  num("tol_generator", 1e-4, "relative commutator defects")}});

    k.push_back({"empair",
                 "charge-mass equivalence: (q, m) against (-q, -m) in the same fields",
                 {num("mass", -1.0, "signed mass"),
                  num("charge", 1.0, ""),
                  vec("position", {0.0, 0.0, 0.0}, ""),
                  vec("velocity", {0.1, 0.0, 0.0}, ""),
                  vec("E", {0.0, 0.0, 0.0}, "electric field"),
                  vec("B", {0.0, 0.0, 1.0}, "magnetic field"),
                  num("duration", 20.0, ""),
                  count("n_samples", 201, "output rows"),
                  flag("relativistic", false, "use d(gamma m v)/dt"),
                  num("tol_equivalence", 1e-9, "max state difference of the two runs"),
                  num("tol_speed", 1e-9, "relative speed drift when E = 0")}});

    k.push_back({"galilean",
                 "Ehrenfest drift and Weyl phase for a signed-mass wave packet",
                 {num("mass", -1.0, "signed mass"),
                  num("x0", 0.0, "packet centre"),
                  num("sigma", 1.0, "packet width"),
                  num("k0", 1.0, "mean wavenumber"),
                  num("x_min", -100.0, ""),
                  num("x_max", 100.0, ""),
                  count("points", 2048, "grid points"),
                  num("duration", 10.0, ""),
                  count("n_samples", 101, "times at which <X>, <P> are taken"),
                  num("Xi", 0.7, "translation"),
                  num("v", 0.3, "boost velocity"),
                  num("tol_ehrenfest", 1e-6, "|d<X>/dt - <P>/M|"),
                  num("tol_phase", 1e-10, "|phase - M Xi v / hbar|")}});

    k.push_back({"nbody",
                 "signed-mass N-body gravity and Coulomb (natural units)",
                 {vec("masses", {1.0, 1.0}, "signed masses"),
                  vec("charges", {}, "charges, empty for all zero"),
                  vec("positions", {-0.5, 0.0, 0.0, 0.5, 0.0, 0.0}, "x y z per body"),
                  vec("velocities", {0.0, -0.7071067811865476, 0.0, 0.0, 0.7071067811865476, 0.0},
                      "vx vy vz per body"),
                  flag("gravity", true, ""),
                  flag("coulomb", false, ""),
                  flag("relativistic", false, ""),
                  num("duration", 20.0, ""),
                  count("n_samples", 401, "output rows"),
                  num("collision_distance", 0.0, "halt below this separation (0 = never)"),
                  num("tol_energy", 1e-8, "relative energy drift"),
                  num("tol_momentum", 1e-9, "momentum drift")}});

    k.push_back({"pair",
                 "force pattern of two signed masses and charges",
                 {num("m1", 1.0, "signed mass of body 1"),
                  num("m2", -1.0, "signed mass of body 2"),
                  num("q1", 0.0, ""),
                  num("q2", 0.0, ""),
                  num("r0", 1.0, "separation"),
                  num("tol_force", 1e-6, "relative radial force vs -dU/dr by differences")}});

    k.push_back({"qm2",
                 "two signed-mass quanta: separation and relative bound states",
                 {num("m_a", 1.0, "signed mass"),
                  num("m_b", 1.0, "signed mass"),
                  num("kappa", 1.0, "coupling strength"),
                  num("softening", 1.0, "soft-Coulomb core"),
                  num("x_min", -30.0, ""),
                  num("x_max", 30.0, ""),
                  count("points", 512, "grid points per coordinate"),
                  count("modes", 2, "relative eigenstates to compute"),
                  num("com_wavenumber", 0.0, "centre-of-mass K, must fit the torus"),
                  num("tol_eigen", 1e-9, "eigensolver residual"),
                  num("tol_separation", 1e-6, "two-particle residual on the ground state")}});

    k.push_back({"runaway",
                 "positive and negative mass chasing each other from rest",
                 {num("m_plus", 1.0, "positive mass"),
                  num("m_minus", -1.0, "negative mass"),
                  num("d0", 1.0, "initial separation"),
                  pick("coupling", "gravitational", {"gravitational", "electrostatic"}, ""),
                  num("q_plus", 0.0, ""),
                  num("q_minus", 0.0, ""),
                  num("softening_fraction", 1e-6, "halt below this fraction of d0"),
                  num("duration_dyn", 10.0, "simulated time in dynamical times"),
                  count("n_samples", 1001, "output rows"),
                  num("tol_separation", 1e-6, "relative separation drift"),
                  num("tol_momentum", 1e-9, "total momentum over |m| c"),
                  num("tol_energy", 1e-9, "energy drift over |m| c^2")}});

    k.push_back({"sphere",
                 "self-energy of a charged ball of signed mass",
                 {num("Q", 1.0, "charge"),
                  num("M", -1.0, "signed mass"),
                  num("R", 1.0, "radius"),
                  count("samples", 100000, "Monte Carlo point pairs"),
                  num("tol_relative", 0.01, "relative to max(|U|, Q^2-only energy)")}});

    k.push_back({"thermo",
                 "ideal gas of signed mass at signed temperature (SI)",
                 {num("mass", -9.1093837015e-31, "signed particle mass, kg"),
                  num("T", -300.0, "signed temperature, K"),
                  count("N", 1000, "particles"),
                  num("volume", 1e-3, "m^3"),
                  num("other_mass", 9.1093837015e-31, "second species, kg"),
                  num("other_T", 300.0, "second species temperature, K"),
                  count("other_N", 0, "second species particles (0 = absent)"),
                  num("U_from", -1e-17, "first energy of the entropy curve, J"),
                  num("U_to", -1e-18, "last energy of the entropy curve, J"),
                  count("points", 50, "entropy curve points"),
                  num("tol_slope", 1e-6, "relative dS/dU by differences vs 1/T")}});

    k.push_back({"yukawa",
                 "Yukawa potential with a signed-mass carrier",
                 {num("mass", -1.0, "signed carrier inverse length (natural units)"),
                  num("g", 1.0, "coupling"),
                  num("r_lo", 0.05, ""),
                  num("r_hi", 5.0, ""),
                  count("points", 200, "curve points"),
                  num("range_m", 1.0, "range for the carrier mass bound, m"),
                  num("tol_turning", 1e-10, "turning point vs numeric minimiser")}});
    return k;
}

}  // namespace

const std::vector<KindSpec>& kind_specs()
{
    static const std::vector<KindSpec> specs = build();
    return specs;
}

}  // namespace negmass::scenario
