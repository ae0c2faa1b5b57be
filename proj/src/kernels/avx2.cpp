#include <immintrin.h>

#include "kernel_impl.hpp"

namespace vinerep::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

void profit_table(const ProfitCoeffs& c, int first_age, std::span<double> out) {
  const __m256d pq = _mm256_set1_pd(c.price_times_qc);
  const __m256d p0 = _mm256_set1_pd(c.p0);
  const __m256d p1 = _mm256_set1_pd(c.p1);
  const __m256d p2 = _mm256_set1_pd(c.p2);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));
  const double base = static_cast<double>(first_age);
  __m256d age = _mm256_setr_pd(base, base + 1.0, base + 2.0, base + 3.0);

  const std::size_t n = out.size();
  const std::size_t body = n - n % kLanes;
  std::size_t i = 0;
  for (; i < body; i += kLanes) {
    __m256d quantity = _mm256_add_pd(_mm256_mul_pd(p2, age), p1);
    quantity = _mm256_add_pd(_mm256_mul_pd(quantity, age), p0);
    const __m256d profit = _mm256_mul_pd(_mm256_mul_pd(pq, age), quantity);
    _mm256_storeu_pd(out.data() + i, profit);
    age = _mm256_add_pd(age, step);
  }
  for (; i < n; ++i) out[i] = profit_at(c, base + static_cast<double>(i));
}

void bellman_stage(const BellmanStage& s) {
  const __m256d cost = _mm256_set1_pd(s.cut_cost);
  const __m256d cut_next = _mm256_set1_pd(s.next_value[0]);
  const double cut_next_count_scalar = s.next_cuts[0] + 1.0;
  const __m256d cut_next_count = _mm256_set1_pd(cut_next_count_scalar);
  const __m256d one = _mm256_set1_pd(1.0);

  const std::size_t n = s.value.size();
  const std::size_t body = n - n % kLanes;
  std::size_t a = 0;
  for (; a < body; a += kLanes) {
    const __m256d reward = _mm256_loadu_pd(s.reward.data() + a);
    const __m256d keep = _mm256_add_pd(reward, _mm256_loadu_pd(s.next_value.data() + a + 1));
    const __m256d keep_count = _mm256_loadu_pd(s.next_cuts.data() + a + 1);
    const __m256d cut = _mm256_add_pd(_mm256_sub_pd(reward, cost), cut_next);

    const __m256d better = _mm256_cmp_pd(cut, keep, _CMP_GT_OQ);
    const __m256d tied = _mm256_and_pd(_mm256_cmp_pd(cut, keep, _CMP_EQ_OQ),
                                       _mm256_cmp_pd(cut_next_count, keep_count, _CMP_LT_OQ));
    const __m256d take = _mm256_or_pd(better, tied);

    _mm256_storeu_pd(s.value.data() + a, _mm256_blendv_pd(keep, cut, take));
    _mm256_storeu_pd(s.cuts.data() + a, _mm256_blendv_pd(keep_count, cut_next_count, take));

    alignas(32) double flags[kLanes];
    _mm256_store_pd(flags, _mm256_and_pd(take, one));
    for (std::size_t k = 0; k < kLanes; ++k) s.cut[a + k] = flags[k] != 0.0 ? 1 : 0;
  }
  for (; a < n; ++a) {
    const double keep = s.reward[a] + s.next_value[a + 1];
    const double keep_count = s.next_cuts[a + 1];
    const double cut = (s.reward[a] - s.cut_cost) + s.next_value[0];
    const bool take_cut = cut > keep || (cut == keep && cut_next_count_scalar < keep_count);
    s.value[a] = take_cut ? cut : keep;
    s.cuts[a] = take_cut ? cut_next_count_scalar : keep_count;
    s.cut[a] = take_cut ? 1 : 0;
  }
}

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < body; i += kLanes) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < body; i += kLanes) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const __m256d a = _mm256_set1_pd(alpha);
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  std::size_t i = 0;
  for (; i < body; i += kLanes) {
    const __m256d updated = _mm256_add_pd(_mm256_loadu_pd(y.data() + i), _mm256_mul_pd(a, _mm256_loadu_pd(x.data() + i)));
    _mm256_storeu_pd(y.data() + i, updated);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable& table() noexcept {
  static const KernelTable t{Backend::avx2, &profit_table, &bellman_stage, &dot, &sum, &axpy};
  return t;
}

}  // namespace vinerep::kernels::avx2
