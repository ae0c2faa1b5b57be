#include "vinerep/kernels/kernels.hpp"

#include "kernel_impl.hpp"

namespace vinerep::kernels {
namespace scalar {

void profit_table(const ProfitCoeffs& c, int first_age, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double age = static_cast<double>(first_age) + static_cast<double>(i);
    out[i] = profit_at(c, age);
  }
}

void bellman_stage(const BellmanStage& s) {
  const double cut_next = s.next_value[0];
  const double cut_next_count = s.next_cuts[0] + 1.0;
  for (std::size_t age = 0; age < s.value.size(); ++age) {
    const double keep = s.reward[age] + s.next_value[age + 1];
    const double keep_count = s.next_cuts[age + 1];
    const double cut = (s.reward[age] - s.cut_cost) + cut_next;
    const bool take_cut = cut > keep || (cut == keep && cut_next_count < keep_count);
    s.value[age] = take_cut ? cut : keep;
    s.cuts[age] = take_cut ? cut_next_count : keep_count;
    s.cut[age] = take_cut ? 1 : 0;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double sum(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace scalar

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Backend::scalar, &scalar::profit_table, &scalar::bellman_stage,
                                 &scalar::dot,    &scalar::sum,          &scalar::axpy};
  return table;
}

}  // namespace vinerep::kernels
