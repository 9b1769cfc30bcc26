#include "negmass/kernels/execution.hpp"

#include <omp.h>

namespace negmass::kernels {

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace negmass::kernels
