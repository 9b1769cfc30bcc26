#pragma once

namespace negmass::kernels {

/// Selects the OpenMP kernel or its serial reference. Both produce results
/// that the tests compare; the serial path is the readable definition.
enum class Execution
{
    serial,
    parallel
};

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace negmass::kernels
