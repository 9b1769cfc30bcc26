#pragma once

#include <vector>

#include "negmass/core/grid.hpp"
#include "negmass/core/signed_mass.hpp"
#include "negmass/core/types.hpp"

namespace negmass::galilean {

/// Kinetic energy used by the free evolution: exact hbar^2 k^2 / 2M, or the
/// three-point stencil hbar^2 (2 - 2 cos k dx) / (2 M dx^2).
enum class Dispersion
{
    spectral,
    second_order_stencil
};

struct EhrenfestConfig
{
    std::size_t n_samples = 101;
    std::size_t steps_per_sample = 4;
    double hbar = 1.0;
    Dispersion dispersion = Dispersion::spectral;
};

struct EhrenfestReport
{
    std::vector<double> t;
    std::vector<double> mean_x;
    std::vector<double> mean_p;
    /// max_t |d<X>/dt - <P>/M|, d/dt by central differences of <X>(t).
    double max_residual;
    double max_norm_drift;
};

/**
 * Evolves psi0 under H = P^2 / (2M) with the spectral split-step method and
 * compares the drift of <X> with <P>/M. M may be negative: the packet then
 * moves against its momentum.
 *
 * Throws NumericalError("evolution inaccurate") when the norm drifts by more
 * than 1e-8, and when probability reaches the outer 5% of the grid.
 */
EhrenfestReport ehrenfest_check(SignedMass M, const GridWavefunction& psi0, TimeSpan span,
                                const EhrenfestConfig& cfg = {});

struct WeylReport
{
    /// arg <psi0 | U_v U_Xi U_v^dag U_Xi^dag psi0>
    double phase;
    /// M Xi v / hbar
    double expected;
    double fidelity;
};

/// Group commutator of a translation U_Xi = exp(i Xi P / hbar) and a boost
/// U_v = exp(i v N / hbar) with N = -M X (t = 0). Throws
/// NumericalError("representation error") when the result is not psi0 up
/// to a phase (fidelity below 1 - 1e-10).
WeylReport weyl_phase(SignedMass M, double Xi, double v, const GridWavefunction& psi0,
                      double hbar = 1.0);

}  // namespace negmass::galilean
