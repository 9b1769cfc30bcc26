#include "negmass/core/grid.hpp"

#include <cmath>

namespace negmass {

GridWavefunction::GridWavefunction(Grid1D grid, std::vector<std::complex<double>> samples)
    : grid_(grid), samples_(std::move(samples))
{
    grid_.validate();
    if (samples_.size() != grid_.n)
        throw DomainError("GridWavefunction: sample count does not match the grid");
}

GridWavefunction GridWavefunction::gaussian(Grid1D grid, double x0, double sigma, double k0)
{
    grid.validate();
    std::vector<std::complex<double>> s(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
    {
        const double d = grid.x(i) - x0;
        s[i] = std::exp(-d * d / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * grid.x(i));
    }
    GridWavefunction psi(grid, std::move(s));
    psi.normalize();
    return psi;
}

double GridWavefunction::norm() const noexcept
{
    double acc = 0.0;
    for (const auto& z : samples_)
        acc += std::norm(z);
    return acc * grid_.dx;
}

void GridWavefunction::normalize()
{
    const double n = norm();
    if (!(n > 0.0))
        throw DomainError("GridWavefunction: cannot normalise a zero state");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& z : samples_)
        z *= scale;
}

}  // namespace negmass
