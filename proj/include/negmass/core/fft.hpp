#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace negmass {

using cplx = std::complex<double>;

/// In-place complex DFT (FFTW backend, FFTW_ESTIMATE plans so results do not
/// depend on timing). The forward transform is unnormalized; inverse()
/// divides by the element count.
class Fft
{
  public:
    /// One-dimensional transform of length n.
    explicit Fft(std::size_t n);
    /// Two-dimensional row-major transform of shape rows x cols.
    Fft(std::size_t rows, std::size_t cols);
    ~Fft();

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    Fft(Fft&& other) noexcept;
    Fft& operator=(Fft&& other) noexcept;

    std::size_t size() const noexcept { return size_; }

    void forward(std::span<cplx> data) const;
    void inverse(std::span<cplx> data) const;

  private:
    void make_plans(int rank, const int* dims);

    std::size_t size_ = 0;
    void* forward_plan_ = nullptr;
    void* backward_plan_ = nullptr;
};

/// Angular wavenumbers in FFT order for n points spaced dx (periodic length
/// n*dx): 0, 1, ..., n/2-1, -n/2, ..., -1 times 2*pi/(n*dx).
std::vector<double> fft_wavenumbers(std::size_t n, double dx);

}  // namespace negmass
