#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "negmass/core/errors.hpp"
#include "negmass/core/grid.hpp"
#include "negmass/core/signed_mass.hpp"

namespace negmass::qm_twobody {

/// Two quanta on a line with V(r) = -kappa lambda_a lambda_b / sqrt(r^2 + s^2).
/// `grid` is the periodic grid for each particle coordinate; the relative
/// coordinate uses the same spacing and length, centred on r = 0.
struct QuantaPair
{
    SignedMass m_a{Sign::positive, 1.0};
    SignedMass m_b{Sign::positive, 1.0};
    double kappa = 1.0;
    Grid1D grid = Grid1D::spanning(-30.0, 30.0, 512);
    double softening = 1.0;

    void validate() const;
};

struct Separation
{
    /// |m_a| + |m_b|
    double total_mass;
    /// |m_a| |m_b| / (|m_a| + |m_b|)
    double reduced_mass;
    /// -lambda_a lambda_b: -1 attractive, +1 repulsive.
    int coupling_sign;

    bool attractive() const noexcept { return coupling_sign < 0; }
};

Separation separate(const QuantaPair& pair);

/// Soft-Coulomb interaction at separation r (minimum image on the periodic
/// relative grid).
double relative_potential(const QuantaPair& pair, double r);

/// Grid for the relative coordinate: x_i = -L/2 + i dx.
Grid1D relative_grid(const QuantaPair& pair);

struct PlaneWave
{
    std::vector<std::complex<double>> xi;
    /// sqrt(2 M |E_R|) / hbar
    double wavenumber;
    /// Energy below zero: xi = exp(+wavenumber R) instead of a plane wave.
    bool evanescent;
    /// |H xi - E_R xi| / |xi| over interior points, eighth-order stencil.
    double residual;
    /// Location of the largest |FFT| bin, in angular wavenumber.
    double fft_peak_wavenumber;
};

/// Centre-of-mass wave xi(R) = exp(i sqrt(2 M E_R) R / hbar) sampled on a
/// non-periodic grid.
PlaneWave com_plane_wave(double M, double E_R, const Grid1D& R_grid, double hbar = 1.0);

struct EigenConfig
{
    std::size_t n_modes = 1;
    std::size_t max_iterations = 200000;
    /// Converged when ||H z - E z|| / ||z|| < residual_tol and the energy moved
    /// by less than energy_tol in the last step. For excited modes the
    /// residual is taken orthogonal to the lower modes.
    double residual_tol = 1e-9;
    double energy_tol = 1e-10;
    double hbar = 1.0;
};

struct EigenState
{
    double energy;
    /// Samples on relative_grid(pair), unit norm (sum |z|^2 dx = 1).
    std::vector<std::complex<double>> samples;
    double residual;
    std::size_t iterations;
};

class EigensolverNonConvergence : public NumericalError
{
  public:
    EigensolverNonConvergence(std::size_t mode, std::size_t iterations);
    std::size_t iterations() const noexcept { return iterations_; }

  private:
    std::size_t iterations_;
};

/// Lowest eigenstates of -hbar^2/(2 mu) d^2/dr^2 + V(r) on the periodic
/// relative grid, by preconditioned imaginary-time iteration with
/// Gram-Schmidt against lower modes.
std::vector<EigenState> relative_eigenstates(const QuantaPair& pair, const EigenConfig& cfg = {});

/// Negative ground-state energy of the relative problem.
bool bound_state_exists(const QuantaPair& pair, const EigenConfig& cfg = {});

struct SeparationReport
{
    double residual;
    double E_R;
    double E_r;
};

/**
 * Builds Psi(x_a, x_b) = exp(i K R) zeta(x_a - x_b) on the n x n periodic
 * grid, with R = (|m_a| x_a + |m_b| x_b) / M, and returns
 * ||H Psi - (E_R + E_r) Psi|| / ||Psi|| for the full two-particle
 * Hamiltonian (spectral kinetic terms with |m_a| and |m_b|).
 *
 * K must fit the torus: K |m_a| L / M and K |m_b| L / M multiples of 2 pi.
 */
SeparationReport separation_residual(const QuantaPair& pair, const EigenState& zeta, double K,
                                     double hbar = 1.0);

}  // namespace negmass::qm_twobody
