#pragma once

#include <cstddef>
#include <cstdint>

#include "negmass/kernels/execution.hpp"

namespace negmass::kernels {

/// Monte Carlo estimate of <1/|r - r'|> for r, r' independent and uniform
/// in a ball of the given radius.
///
/// Samples are drawn in fixed-size chunks, each with its own generator
/// seeded from (seed, chunk index); chunk sums are combined in chunk order.
/// The serial and parallel paths therefore return bit-identical values for
/// any thread count.
double mean_inverse_distance(std::size_t n_pairs, double radius, std::uint64_t seed,
                             Execution exec = Execution::parallel);

inline constexpr std::size_t sphere_chunk_size = 4096;

}  // namespace negmass::kernels
