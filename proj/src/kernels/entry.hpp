#pragma once

#include "dephase/kernels.hpp"

namespace dephase::kernels::detail {

ModeSums accumulate_scalar(Family f, const Args& args, const ModeBatch& batch);
#if defined(DEPHASE_HAVE_AVX2)
ModeSums accumulate_avx2(Family f, const Args& args, const ModeBatch& batch);
#endif
#if defined(DEPHASE_HAVE_NEON)
ModeSums accumulate_neon(Family f, const Args& args, const ModeBatch& batch);
#endif

}  // namespace dephase::kernels::detail
