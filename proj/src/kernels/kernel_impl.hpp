#pragma once

#include "vinerep/kernels/kernels.hpp"

namespace vinerep::kernels {

// Shared by the scalar kernels, the SIMD tails and the model's point
// evaluation so that all of them round the same way.
inline double profit_at(const ProfitCoeffs& c, double age) {
  const double quantity = (c.p2 * age + c.p1) * age + c.p0;
  return (c.price_times_qc * age) * quantity;
}

#if defined(VINEREP_HAVE_AVX2)
namespace avx2 {
const KernelTable& table() noexcept;
}
#endif

}  // namespace vinerep::kernels
