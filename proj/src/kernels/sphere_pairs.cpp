#include "negmass/kernels/sphere_pairs.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace negmass::kernels {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// 53 random bits mapped to [-1, 1); independent of the standard library's
// distribution implementations.
inline double symmetric_unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

inline void point_in_ball(std::mt19937_64& rng, double r, double out[3])
{
    for (;;)
    {
        const double x = symmetric_unit(rng), y = symmetric_unit(rng), z = symmetric_unit(rng);
        if (x * x + y * y + z * z < 1.0)
        {
            out[0] = r * x;
            out[1] = r * y;
            out[2] = r * z;
            return;
        }
    }
}

double chunk_sum(std::size_t chunk, std::size_t count, double radius, std::uint64_t seed)
{
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk)));
    double a[3], b[3];
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k)
    {
        point_in_ball(rng, radius, a);
        point_in_ball(rng, radius, b);
        const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
        sum += 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return sum;
}

}  // namespace

double mean_inverse_distance(std::size_t n_pairs, double radius, std::uint64_t seed,
                             Execution exec)
{
    if (n_pairs == 0 || !(radius > 0.0))
        throw std::invalid_argument("mean_inverse_distance: need n_pairs > 0 and radius > 0");
    const std::size_t chunks = (n_pairs + sphere_chunk_size - 1) / sphere_chunk_size;
    std::vector<double> sums(chunks);
    auto count_of = [&](std::size_t c) {
        return c + 1 < chunks ? sphere_chunk_size : n_pairs - c * sphere_chunk_size;
    };

    if (exec == Execution::serial)
    {
        for (std::size_t c = 0; c < chunks; ++c)
            sums[c] = chunk_sum(c, count_of(c), radius, seed);
    }
    else
    {
        const auto nc = static_cast<long>(chunks);
#pragma omp parallel for schedule(static)
        for (long c = 0; c < nc; ++c)
            sums[c] = chunk_sum(static_cast<std::size_t>(c), count_of(c), radius, seed);
    }

    double total = 0.0;
    for (double s : sums)
        total += s;
    return total / static_cast<double>(n_pairs);
}

}  // namespace negmass::kernels
