// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "diagcubic/kernels/phase_sums.hpp"

#include <immintrin.h>

#include <cmath>
#include <numbers>

namespace diagcubic::kernels::detail {

namespace {

// Taylor coefficients, good to ~1e-17 on |x| <= pi/4.
constexpr double kSin[8] = {1.0,
                            -1.0 / 6.0,
                            1.0 / 120.0,
                            -1.0 / 5040.0,
                            1.0 / 362880.0,
                            -1.0 / 39916800.0,
                            1.0 / 6227020800.0,
                            -1.0 / 1307674368000.0};
constexpr double kCos[9] = {1.0,
                            -1.0 / 2.0,
                            1.0 / 24.0,
                            -1.0 / 720.0,
                            1.0 / 40320.0,
                            -1.0 / 3628800.0,
                            1.0 / 479001600.0,
                            -1.0 / 87178291200.0,
                            1.0 / 20922789888000.0};

inline __m256d round_nearest(__m256d v) { return _mm256_round_pd(v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }

// e(phi) for four lanes: phi is reduced to [-1/2, 1/2], split into a
// quarter turn k and a remainder |rem| <= 1/8, then rotated by i^k.
inline void cis4(__m256d phi, __m256d& re, __m256d& im) {
  phi = _mm256_sub_pd(phi, round_nearest(phi));
  const __m256d kq = round_nearest(_mm256_mul_pd(phi, _mm256_set1_pd(4.0)));
  const __m256d rem = _mm256_fnmadd_pd(kq, _mm256_set1_pd(0.25), phi);
  const __m256d x = _mm256_mul_pd(rem, _mm256_set1_pd(2.0 * std::numbers::pi));
  const __m256d z = _mm256_mul_pd(x, x);

  __m256d s = _mm256_set1_pd(kSin[7]);
  for (int i = 6; i >= 0; --i) s = _mm256_fmadd_pd(s, z, _mm256_set1_pd(kSin[i]));
  s = _mm256_mul_pd(s, x);
  __m256d c = _mm256_set1_pd(kCos[8]);
  for (int i = 7; i >= 0; --i) c = _mm256_fmadd_pd(c, z, _mm256_set1_pd(kCos[i]));

  // q = k mod 4 in 64-bit lanes
  const __m256i q = _mm256_and_si256(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(kq)), _mm256_set1_epi64x(3));
  const __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d neg_re =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), two));
  const __m256d neg_im = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);

  re = _mm256_blendv_pd(c, s, swap);
  im = _mm256_blendv_pd(s, c, swap);
  re = _mm256_xor_pd(re, _mm256_and_pd(neg_re, sign));
  im = _mm256_xor_pd(im, _mm256_and_pd(neg_im, sign));
}

// Per-lane Kahan accumulator.
struct Kahan4 {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d y = _mm256_sub_pd(x, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }
  double reduce() const {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    double total = 0.0, carry = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double v = s[i] - c[i];
      const double t = total + v;
      carry += std::fabs(total) >= std::fabs(v) ? (total - t) + v : (v - t) + total;
      total = t;
    }
    return total + carry;
  }
};

}  // namespace

std::complex<double> cis_sum_avx2(const double* phases, std::size_t n) {
  Kahan4 re, im;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d cr, ci;
    cis4(_mm256_loadu_pd(phases + k), cr, ci);
    re.add(cr);
    im.add(ci);
  }
  std::complex<double> tail = cis_sum_scalar(phases + k, n - k);
  return {re.reduce() + tail.real(), im.reduce() + tail.imag()};
}

std::complex<double> cis_sum_scaled_avx2(double alpha, const double* values, std::size_t n) {
  Kahan4 re, im;
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_loadu_pd(values + k);
    const __m256d p = _mm256_mul_pd(a, v);
    const __m256d e = _mm256_fmsub_pd(a, v, p);
    const __m256d phi = _mm256_add_pd(_mm256_sub_pd(p, round_nearest(p)), e);
    __m256d cr, ci;
    cis4(phi, cr, ci);
    re.add(cr);
    im.add(ci);
  }
  std::complex<double> tail = cis_sum_scaled_scalar(alpha, values + k, n - k);
  return {re.reduce() + tail.real(), im.reduce() + tail.imag()};
}

double cos_dot_avx2(const double* phases, const double* weights, std::size_t n) {
  Kahan4 acc;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d cr, ci;
    cis4(_mm256_loadu_pd(phases + k), cr, ci);
    acc.add(_mm256_mul_pd(cr, _mm256_loadu_pd(weights + k)));
  }
  return acc.reduce() + cos_dot_scalar(phases + k, weights + k, n - k);
}

}  // namespace diagcubic::kernels::detail
