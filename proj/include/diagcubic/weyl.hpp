#pragma once

#include "diagcubic/smooth.hpp"

#include <complex>
#include <cstdint>
#include <string>

namespace diagcubic {

// alpha = a/q, kept exact so phases can be reduced in integer arithmetic.
struct RationalAlpha {
  std::int64_t a = 0;
  std::int64_t q = 1;
};

// "a/q" or a decimal.  Returns true and fills `exact` for the former.
bool parse_alpha(const std::string& text, RationalAlpha& exact, double& approx);

// Largest P for which x^3 stays exactly representable as a double.
constexpr std::int64_t kMaxWeylP = 200000;

// f(alpha) = sum_{|x| <= P} e(alpha x^3)
std::complex<double> f_eval(double alpha, std::int64_t P);
std::complex<double> f_eval(const RationalAlpha& alpha, std::int64_t P);

// g(alpha; P, R) = sum over the R-smooth x with 0 < |x| <= P
std::complex<double> g_eval(double alpha, const SmoothSet& smooth);
std::complex<double> g_eval(const RationalAlpha& alpha, const SmoothSet& smooth);
std::complex<double> g_eval(double alpha, std::int64_t P, std::int64_t R);

// sum_{x in xs} e(alpha x^3) for an arbitrary integer list.
std::complex<double> cubic_phase_sum(double alpha, const std::vector<std::int64_t>& xs);
std::complex<double> cubic_phase_sum(const RationalAlpha& alpha, const std::vector<std::int64_t>& xs);

}  // namespace diagcubic
