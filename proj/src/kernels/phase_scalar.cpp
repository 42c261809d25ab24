#include "diagcubic/kernels/phase_sums.hpp"

#include <cmath>
#include <numbers>

namespace diagcubic::kernels::detail {

namespace {

// Neumaier's variant of compensated summation.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) carry += (sum - t) + x;
    else carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline double reduce(double phi) { return phi - std::nearbyint(phi); }

}  // namespace

std::complex<double> cis_sum_scalar(const double* phases, std::size_t n) {
  Compensated re, im;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = 2.0 * std::numbers::pi * reduce(phases[k]);
    re.add(std::cos(x));
    im.add(std::sin(x));
  }
  return {re.value(), im.value()};
}

std::complex<double> cis_sum_scaled_scalar(double alpha, const double* values, std::size_t n) {
  Compensated re, im;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = alpha * values[k];
    const double e = std::fma(alpha, values[k], -p);  // alpha*v == p + e exactly
    const double x = 2.0 * std::numbers::pi * reduce(reduce(p) + e);
    re.add(std::cos(x));
    im.add(std::sin(x));
  }
  return {re.value(), im.value()};
}

double cos_dot_scalar(const double* phases, const double* weights, std::size_t n) {
  Compensated acc;
  for (std::size_t k = 0; k < n; ++k) acc.add(weights[k] * std::cos(2.0 * std::numbers::pi * reduce(phases[k])));
  return acc.value();
}

}  // namespace diagcubic::kernels::detail
