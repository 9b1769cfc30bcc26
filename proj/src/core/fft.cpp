#include "negmass/core/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace negmass {

namespace {
// The FFTW planner is not re-entrant.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(std::size_t n) : size_(n)
{
    const int dims[1] = {static_cast<int>(n)};
    make_plans(1, dims);
}

Fft::Fft(std::size_t rows, std::size_t cols) : size_(rows * cols)
{
    const int dims[2] = {static_cast<int>(rows), static_cast<int>(cols)};
    make_plans(2, dims);
}

void Fft::make_plans(int rank, const int* dims)
{
    if (size_ == 0)
        throw std::invalid_argument("Fft: empty transform");
    std::lock_guard lock(planner_mutex());
    auto* buffer = fftw_alloc_complex(size_);
    forward_plan_ = fftw_plan_dft(rank, dims, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_plan_ = fftw_plan_dft(rank, dims, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    if (!forward_plan_ || !backward_plan_)
        throw std::runtime_error("Fft: planning failed");
}

Fft::~Fft()
{
    if (forward_plan_ || backward_plan_)
    {
        std::lock_guard lock(planner_mutex());
        if (forward_plan_)
            fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
        if (backward_plan_)
            fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
    }
}

Fft::Fft(Fft&& other) noexcept
    : size_(other.size_), forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr))
{
}

Fft& Fft::operator=(Fft&& other) noexcept
{
    if (this != &other)
    {
        std::swap(size_, other.size_);
        std::swap(forward_plan_, other.forward_plan_);
        std::swap(backward_plan_, other.backward_plan_);
    }
    return *this;
}

void Fft::forward(std::span<cplx> data) const
{
    if (data.size() != size_)
        throw std::invalid_argument("Fft: size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), p, p);
}

void Fft::inverse(std::span<cplx> data) const
{
    if (data.size() != size_)
        throw std::invalid_argument("Fft: size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), p, p);
    const double scale = 1.0 / static_cast<double>(size_);
    for (auto& z : data)
        z *= scale;
}

std::vector<double> fft_wavenumbers(std::size_t n, double dx)
{
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto j = static_cast<long>(i);
        const auto nn = static_cast<long>(n);
        k[i] = dk * static_cast<double>(j < (nn + 1) / 2 ? j : j - nn);
    }
    return k;
}

}  // namespace negmass
