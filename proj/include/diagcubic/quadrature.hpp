#pragma once

// Adaptive Gauss-Kronrod quadrature and the cubic oscillatory integral
// w(theta) = int_{-1}^{1} e(theta u^3) du.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace diagcubic {

struct QuadResult {
  double value = 0;
  double error = 0;  // sum of per-panel |K15 - G7| plus propagated inner errors
  std::size_t panels = 0;
};

// Evaluates f at x[0..n) into val, and an (optional, >= 0) error of each
// value into err.  Nested integrals report their own error there.
using BatchIntegrand = std::function<void(const double* x, std::size_t n, double* val, double* err)>;

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0;
  std::size_t max_panels = 100000;
  unsigned threads = 1;
};

// Integrates over [breaks.front(), breaks.back()] starting from the given
// panels and bisecting the worst panel until the error estimate meets the
// tolerance.  Throws ConvergenceError (with the achieved error) past
// max_panels.
QuadResult integrate_adaptive(const BatchIntegrand& f, const std::vector<double>& breaks,
                              const AdaptiveOptions& opts = {});

// Evenly spaced breakpoints on [a, b] with spacing at most h.
std::vector<double> uniform_breaks(double a, double b, double h);

// w(theta) = 2 int_0^1 cos(2 pi theta u^3) du.  Panels are uniform in u^3
// so each holds about half an oscillation.  Past |theta| = kWAsymptoticTheta
// the value comes from the incomplete-gamma expansion
//   w = (2/3) X^(-1/3) [Gamma(1/3) cos(pi/6) - Re int_X^inf s^(-2/3) e^(is) ds],
// X = 2 pi |theta|, whose tail series is far below double precision there.
inline constexpr double kWAsymptoticTheta = 256.0;
QuadResult w_integral(double theta, double tol = 1e-12);
double w_asymptotic(double theta);
double w_eval(double theta, double tol = 1e-12);
// Both parts over [-1, 1]; the imaginary part cancels by oddness.
std::complex<double> w_eval_complex(double theta, double tol = 1e-12);
// v(beta) = int_{-P}^{P} e(beta x^3) dx = P w(P^3 beta).
std::complex<double> v_eval(double beta, double P);

// Piecewise Chebyshev interpolant of w on [-theta_max, theta_max] (w is
// even).  Falls back to w_eval outside.
class WTable {
 public:
  explicit WTable(double theta_max, double segment = 0.25, int degree = 18);
  double operator()(double theta) const;
  double theta_max() const noexcept { return theta_max_; }

 private:
  double theta_max_;
  double segment_;
  int degree_;
  std::vector<double> coeffs_;  // (degree + 1) per segment
};

}  // namespace diagcubic
