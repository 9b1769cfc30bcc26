#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "negmass/core/errors.hpp"

namespace negmass {

/// Uniform periodic grid x_i = x_min + i dx, i = 0..n-1, of length n dx.
struct Grid1D
{
    double x_min = 0.0;
    double dx = 1.0;
    std::size_t n = 2;

    static Grid1D spanning(double x_min, double x_max, std::size_t n)
    {
        return Grid1D{x_min, (x_max - x_min) / static_cast<double>(n), n};
    }

    double x(std::size_t i) const noexcept { return x_min + dx * static_cast<double>(i); }
    double length() const noexcept { return dx * static_cast<double>(n); }
    double x_max() const noexcept { return x_min + length(); }

    void validate() const
    {
        if (n < 2 || !(dx > 0.0))
            throw DomainError("Grid1D: need n >= 2 and dx > 0");
    }
};

/// Sampled wavefunction on a periodic grid.
class GridWavefunction
{
  public:
    GridWavefunction(Grid1D grid, std::vector<std::complex<double>> samples);

    /// Normalised Gaussian packet centred at x0 with width sigma and mean
    /// wavenumber k0.
    static GridWavefunction gaussian(Grid1D grid, double x0, double sigma, double k0);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const std::complex<double>> samples() const noexcept { return samples_; }
    std::span<std::complex<double>> samples() noexcept { return samples_; }

    /// sum |psi|^2 dx
    double norm() const noexcept;
    void normalize();

  private:
    Grid1D grid_;
    std::vector<std::complex<double>> samples_;
};

}  // namespace negmass
