#define DEPHASE_KERNEL_NS neon_v1
#include "kernels/mode_kernels.hpp"
#include "kernels/entry.hpp"

namespace dephase::kernels::detail {

ModeSums accumulate_neon(Family f, const Args& args, const ModeBatch& batch) {
    return run<stdx::native_simd<double>>(f, args, batch);
}

}  // namespace dephase::kernels::detail
