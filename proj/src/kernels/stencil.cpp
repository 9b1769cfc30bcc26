#include "negmass/kernels/stencil.hpp"

#include <array>
#include <stdexcept>

namespace negmass::kernels {

namespace {

// Coefficients of f(x + k h), k = 1..order/2, for the antisymmetric first
// derivative stencil.
std::span<const double> coefficients(int order)
{
    static constexpr std::array<double, 1> o2{1.0 / 2};
    static constexpr std::array<double, 2> o4{2.0 / 3, -1.0 / 12};
    static constexpr std::array<double, 3> o6{3.0 / 4, -3.0 / 20, 1.0 / 60};
    static constexpr std::array<double, 4> o8{4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    switch (order)
    {
    case 2: return o2;
    case 4: return o4;
    case 6: return o6;
    case 8: return o8;
    default: throw std::invalid_argument("central_derivative: order must be 2, 4, 6 or 8");
    }
}

// Derivative along `axis` for every point whose first index is ix.
void slab(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
          CubeLayout L, int axis, double inv_h, std::span<const double> w, long ix)
{
    const long n = static_cast<long>(L.n);
    const long nc = static_cast<long>(L.components);
    const long stride = axis == 0 ? n * n * nc : axis == 1 ? n * nc : nc;
    const long half = static_cast<long>(w.size());
    for (long iy = 0; iy < n; ++iy)
    {
        for (long iz = 0; iz < n; ++iz)
        {
            const long idx[3] = {ix, iy, iz};
            const long pos = idx[axis];
            const long base = ((ix * n + iy) * n + iz) * nc;
            for (long c = 0; c < nc; ++c)
            {
                std::complex<double> acc = 0.0;
                for (long k = 1; k <= half; ++k)
                {
                    const double wk = w[k - 1];
                    if (pos + k < n)
                        acc += wk * in[base + c + k * stride];
                    if (pos - k >= 0)
                        acc -= wk * in[base + c - k * stride];
                }
                out[base + c] = acc * inv_h;
            }
        }
    }
}

}  // namespace

void central_derivative(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out, CubeLayout layout, int axis,
                        double h, int order, Execution exec)
{
    if (in.size() != layout.values() || out.size() != layout.values())
        throw std::invalid_argument("central_derivative: buffer size mismatch");
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("central_derivative: axis must be 0, 1 or 2");
    const auto w = coefficients(order);
    const double inv_h = 1.0 / h;
    const long n = static_cast<long>(layout.n);
    if (exec == Execution::serial)
    {
        for (long ix = 0; ix < n; ++ix)
            slab(in, out, layout, axis, inv_h, w, ix);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long ix = 0; ix < n; ++ix)
        slab(in, out, layout, axis, inv_h, w, ix);
}

}  // namespace negmass::kernels
