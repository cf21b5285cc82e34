#pragma once

#include "factorlab/kernels.hpp"

namespace factorlab::kernels {

// Each returns nullptr when the backend is not compiled in for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace factorlab::kernels
