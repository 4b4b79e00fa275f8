#define DEPHASE_KERNEL_NS scalar_v1
#include "kernels/mode_kernels.hpp"
#include "kernels/entry.hpp"

namespace dephase::kernels::detail {

ModeSums accumulate_scalar(Family f, const Args& args, const ModeBatch& batch) {
    return run<double>(f, args, batch);
}

}  // namespace dephase::kernels::detail
