#pragma once

// Data-parallel inner loops used by the model, the planner and the fitters.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 implementation. Elementwise kernels (profit_table,
// bellman_stage, axpy) produce bitwise-identical results on every backend;
// reductions (dot, sum) only agree to rounding because lane order changes
// the summation order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace vinerep::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend backend) noexcept;

/// Coefficients of f(age) = price * qc * age * (p2 * age^2 + p1 * age + p0).
struct ProfitCoeffs {
  double price_times_qc;
  double p0;
  double p1;
  double p2;
};

/// Per-stage slices for one backward step of the replacement DP. Indexed by
/// age; `next_*` hold one more entry than `value`/`cut` so that age+1 is
/// always addressable.
struct BellmanStage {
  std::span<const double> reward;      // f(age), per hectare
  std::span<const double> next_value;  // V_{t+1}(age)
  std::span<const double> next_cuts;   // cut count of the optimal tail from (t+1, age)
  double cut_cost;                     // charged to the producer on a cut
  std::span<double> value;             // V_t(age), output
  std::span<double> cuts;              // tail cut count, output
  std::span<std::uint8_t> cut;         // 1 where cutting is optimal, output
};

struct KernelTable {
  Backend backend;
  /// out[i] = f(first_age + i).
  void (*profit_table)(const ProfitCoeffs& coeffs, int first_age, std::span<double> out);
  /// Keep vs cut relaxation; ties go to fewer cuts, then to keeping.
  void (*bellman_stage)(const BellmanStage& stage);
  double (*dot)(std::span<const double> x, std::span<const double> y);
  double (*sum)(std::span<const double> x);
  /// y += alpha * x
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels() noexcept;

/// Best backend available on this CPU, chosen once at first use.
const KernelTable& active_kernels() noexcept;

/// Forces a backend for the rest of the process. Returns false (and changes
/// nothing) if the backend is unavailable.
bool select_backend(Backend backend) noexcept;

}  // namespace vinerep::kernels
