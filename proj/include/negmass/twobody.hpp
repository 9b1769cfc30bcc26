#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negmass/core/constants.hpp"
#include "negmass/core/ode.hpp"
#include "negmass/kernels/execution.hpp"

namespace negmass::twobody {

/// Two point bodies with signed masses and charges. Body 1 sits at the
/// origin and body 2 at r0 along +x.
struct PairSpec
{
    SignedMass m1;
    SignedMass m2;
    double q1 = 0.0;
    double q2 = 0.0;
    double r0 = 1.0;
    double v_rel0 = 0.0;

    void validate() const;
};

/// U(r) = (-4 pi eps G m1 m2 + q1 q2) / (4 pi eps r) with signed masses.
double pair_potential(const PairSpec& spec, double r, const Constants& k);

/// Radial force on body 2, -dU/dr (positive = pushes the bodies apart).
double pair_radial_force(const PairSpec& spec, double r, const Constants& k);

/// Thrown when m1 + m2 = 0: the reduced mass diverges and the relative
/// motion is uniform (use equal_magnitude_separation).
class InfiniteReducedMass : public DomainError
{
  public:
    InfiniteReducedMass() : DomainError("infinite reduced mass: m1 + m2 = 0") {}
};

double reduced_mass(const PairSpec& spec);

/// d^2r/dt^2 = -G (m1 + m2) / r^2 + lambda q^2 / (4 pi eps mu r^2) with
/// mu = m1 m2 / (m1 + m2). The charges of `spec` are not used; they enter
/// as q1 q2 = lambda q^2.
double relative_acceleration(const PairSpec& spec, int lambda, double q, double r,
                             const Constants& k);

/// r(t) = v_rel0 t + r0, the relative motion when m1 + m2 = 0.
double equal_magnitude_separation(const PairSpec& spec, double t);

enum class InteractionKind
{
    mutual_attraction,
    mutual_repulsion,
    chase,
    neutral
};

std::string to_string(InteractionKind kind);

struct Classification
{
    InteractionKind kind;
    /// Body (1 or 2) that accelerates toward the other in a chase; 0 otherwise.
    int pursuer = 0;
    /// Common acceleration direction of both bodies in a chase.
    Vec3 direction = Vec3::Zero();
    /// a1 . r12_hat and a2 . r21_hat (positive = toward the partner).
    double a1_toward = 0.0;
    double a2_toward = 0.0;
    /// Radial force on body 2 (positive = repulsive force).
    double radial_force = 0.0;
};

/// Forces come from F = -grad U, accelerations divide by the signed mass,
/// and the kind follows from the signs of the two inward components.
Classification classify_interaction(const PairSpec& spec, const Constants& k);

/// Uniformly charged and massive ball.
struct SphereSpec
{
    double Q = 0.0;
    SignedMass M{Sign::negative, 1.0};
    double R = 1.0;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 1;

    void validate() const;
};

/// U = 3 (Q^2 - 4 pi eps G M^2) / (20 pi eps R).
double sphere_self_energy(const SphereSpec& spec, const Constants& k);

/// Same energy from the double integral
/// (1/2) int int (rho rho' - 4 pi eps G mu mu') / (4 pi eps |r - r'|),
/// estimated from n_samples random point pairs.
double monte_carlo_self_energy(const SphereSpec& spec, const Constants& k,
                               kernels::Execution exec = kernels::Execution::parallel);

/// sum (gamma_i - 1) c^2 |m_i|; throws DomainError for |v| >= c.
double kinetic_energy_total(std::span<const ParticleState> states, double c);

struct Coupling
{
    bool gravity = true;
    bool coulomb = false;
};

struct NBodyConfig
{
    Coupling coupling;
    /// p = gamma m v when true, p = m v otherwise.
    bool relativistic = false;
    /// A pair closer than this halts the run with a close-approach record.
    double collision_distance = 0.0;
    std::size_t n_samples = 1001;
    IntegratorConfig integrator;
    Constants constants = Constants::natural();
    kernels::Execution exec = kernels::Execution::parallel;
};

struct NBodySample
{
    double t;
    /// sum (1/2)|m| v^2, or sum (gamma - 1)|m| c^2 when relativistic.
    double kinetic;
    double potential;
    /// Conserved energy: sum (1/2) m v^2 (signed) + U, or
    /// sum gamma m c^2 (signed) + U when relativistic.
    double total_energy;
    Vec3 momentum;
};

struct CloseApproach
{
    double t;
    int i;
    int j;
    double distance;
};

struct NBodyResult
{
    std::vector<SignedMass> masses;
    std::vector<double> charges;
    bool relativistic = false;
    double c = 1.0;
    /// State rows are [x_0, y_0, z_0, ..., px_0, py_0, pz_0, ...].
    Trajectory trajectory;
    std::vector<NBodySample> samples;
    std::optional<CloseApproach> close_approach;

    std::size_t bodies() const noexcept { return masses.size(); }
    Vec3 position(std::size_t sample, std::size_t body) const;
    Vec3 momentum(std::size_t sample, std::size_t body) const;
    Vec3 velocity(std::size_t sample, std::size_t body) const;
};

/// Signed-mass Newtonian gravity plus Coulomb for N >= 2 bodies, integrated
/// with the shared adaptive Runge-Kutta stepper.
NBodyResult nbody_sim(std::span<const ParticleState> states, const NBodyConfig& cfg,
                      TimeSpan span);

struct VirialReport
{
    double mean_kinetic;
    double mean_potential;
    /// <T> / <U>; the bound-orbit virial value is -1/2.
    double ratio;
    double first_half_kinetic;
    double second_half_kinetic;
    /// Half-run averages of T agree within 10%.
    bool stationary;
    /// T grew monotonically over the second half and at least doubled.
    bool runaway;
};

/// Time averages (trapezoidal over the samples) of T and U. Never asserts
/// the virial relation; it only reports it.
VirialReport virial_diagnostic(const NBodyResult& result);

}  // namespace negmass::twobody
