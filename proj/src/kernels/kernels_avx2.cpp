// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#define DEPHASE_KERNEL_NS avx2_v1
#include "kernels/mode_kernels.hpp"
#include "kernels/entry.hpp"

namespace dephase::kernels::detail {

ModeSums accumulate_avx2(Family f, const Args& args, const ModeBatch& batch) {
    return run<stdx::native_simd<double>>(f, args, batch);
}

}  // namespace dephase::kernels::detail
