#pragma once

// Batched e(phi) = exp(2 pi i phi) reductions.  Every kernel has a scalar
// reference and, on x86-64, an AVX2+FMA variant picked at runtime.  The
// environment variable DIAGCUBIC_ISA=scalar forces the reference path.

#include <complex>
#include <cstddef>

namespace diagcubic::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
// Best supported ISA, unless overridden through the environment.
Isa detected_isa();
Isa active_isa();
// Mostly for tests and benchmarks.  Throws if the CPU lacks the ISA.
void set_active_isa(Isa isa);

// sum_k e(phases[k]); phases need not be reduced.
std::complex<double> cis_sum(const double* phases, std::size_t n, Isa isa);
// sum_k e(alpha * values[k]); values must be integers with |v| < 2^53.
// alpha * v is split exactly (FMA two-product) before reduction mod 1.
std::complex<double> cis_sum_scaled(double alpha, const double* values, std::size_t n, Isa isa);
// sum_k weights[k] * cos(2 pi phases[k]).
double cos_dot(const double* phases, const double* weights, std::size_t n, Isa isa);

inline std::complex<double> cis_sum(const double* phases, std::size_t n) { return cis_sum(phases, n, active_isa()); }
inline std::complex<double> cis_sum_scaled(double alpha, const double* values, std::size_t n) {
  return cis_sum_scaled(alpha, values, n, active_isa());
}
inline double cos_dot(const double* phases, const double* weights, std::size_t n) {
  return cos_dot(phases, weights, n, active_isa());
}

namespace detail {
std::complex<double> cis_sum_scalar(const double* phases, std::size_t n);
std::complex<double> cis_sum_scaled_scalar(double alpha, const double* values, std::size_t n);
double cos_dot_scalar(const double* phases, const double* weights, std::size_t n);
#ifdef DIAGCUBIC_AVX2_KERNELS
std::complex<double> cis_sum_avx2(const double* phases, std::size_t n);
std::complex<double> cis_sum_scaled_avx2(double alpha, const double* values, std::size_t n);
double cos_dot_avx2(const double* phases, const double* weights, std::size_t n);
#endif
}  // namespace detail

}  // namespace diagcubic::kernels
