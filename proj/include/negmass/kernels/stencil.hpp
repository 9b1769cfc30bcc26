#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "negmass/kernels/execution.hpp"

namespace negmass::kernels {

/// Cubic grid of n^3 points with `components` complex values per point,
/// stored as [((ix * n + iy) * n + iz) * components + c].
struct CubeLayout
{
    std::size_t n;
    std::size_t components;

    std::size_t points() const noexcept { return n * n * n; }
    std::size_t values() const noexcept { return points() * components; }
};

/// Central finite-difference first derivative along `axis` (0, 1, 2) with
/// spacing h. `order` is 2, 4, 6 or 8; values outside the grid are taken as
/// zero.
void central_derivative(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out, CubeLayout layout, int axis,
                        double h, int order, Execution exec = Execution::parallel);

}  // namespace negmass::kernels
