#include "diagcubic/kernels/phase_sums.hpp"

#include "diagcubic/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace diagcubic::kernels {

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("DIAGCUBIC_ISA"); env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2+fma" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(DIAGCUBIC_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detected_isa() { return initial_isa(); }
Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw InvalidArgument(std::string("ISA not supported here: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

std::complex<double> cis_sum(const double* phases, std::size_t n, Isa isa) {
#ifdef DIAGCUBIC_AVX2_KERNELS
  if (isa == Isa::Avx2) return detail::cis_sum_avx2(phases, n);
#endif
  (void)isa;
  return detail::cis_sum_scalar(phases, n);
}

std::complex<double> cis_sum_scaled(double alpha, const double* values, std::size_t n, Isa isa) {
#ifdef DIAGCUBIC_AVX2_KERNELS
  if (isa == Isa::Avx2) return detail::cis_sum_scaled_avx2(alpha, values, n);
#endif
  (void)isa;
  return detail::cis_sum_scaled_scalar(alpha, values, n);
}

double cos_dot(const double* phases, const double* weights, std::size_t n, Isa isa) {
#ifdef DIAGCUBIC_AVX2_KERNELS
  if (isa == Isa::Avx2) return detail::cos_dot_avx2(phases, weights, n);
#endif
  (void)isa;
  return detail::cos_dot_scalar(phases, weights, n);
}

}  // namespace diagcubic::kernels
