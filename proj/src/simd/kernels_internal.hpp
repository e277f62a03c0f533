#pragma once

#include "hbesov/simd/kernels.hpp"

namespace hbesov::simd {

namespace scalar {
extern const KernelTable kTable;
}

#ifdef HBESOV_HAVE_AVX2
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace hbesov::simd
