#include <atomic>

#include "kernel_impl.hpp"
#include "vinerep/kernels/kernels.hpp"

namespace vinerep::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(VINEREP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const KernelTable& detect() noexcept {
  if (const KernelTable* simd = avx2_kernels()) return *simd;
  return scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{&detect()};
  return table;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() noexcept {
#if defined(VINEREP_HAVE_AVX2)
  static const bool available = cpu_has_avx2();
  return available ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept { return *current().load(std::memory_order_acquire); }

bool select_backend(Backend backend) noexcept {
  const KernelTable* table = backend == Backend::scalar ? &scalar_kernels() : avx2_kernels();
  if (table == nullptr) return false;
  current().store(table, std::memory_order_release);
  return true;
}

}  // namespace vinerep::kernels
