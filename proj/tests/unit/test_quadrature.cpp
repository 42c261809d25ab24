#include "diagcubic/errors.hpp"
#include "diagcubic/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace diagcubic;

namespace {
const double kPi = std::acos(-1.0);
}

TEST(Adaptive, SmoothIntegrands) {
  auto sine = [](const double* x, std::size_t n, double* v, double* e) {
    for (std::size_t k = 0; k < n; ++k) v[k] = std::sin(x[k]), e[k] = 0;
  };
  const auto res = integrate_adaptive(sine, {0, kPi});
  EXPECT_NEAR(res.value, 2.0, 1e-12);
  EXPECT_LE(res.error, 1e-10);

  auto peak = [](const double* x, std::size_t n, double* v, double* e) {
    for (std::size_t k = 0; k < n; ++k) v[k] = 1 / (1e-4 + x[k] * x[k]), e[k] = 0;
  };
  const auto p = integrate_adaptive(peak, {-1, 1}, {1e-9, 0, 100000, 2});
  EXPECT_NEAR(p.value, 2 * std::atan(1 / 1e-2) / 1e-2, 1e-7);
  EXPECT_GT(p.panels, 4u);
}

TEST(Adaptive, BudgetExhaustionIsReported) {
  auto wild = [](const double* x, std::size_t n, double* v, double* e) {
    for (std::size_t k = 0; k < n; ++k) v[k] = std::cos(1e5 * x[k] * x[k]), e[k] = 0;
  };
  try {
    integrate_adaptive(wild, {0, 10}, {1e-14, 0, 20, 1});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.achieved(), 1e-14);
  }
  EXPECT_THROW(integrate_adaptive(wild, {0}), InvalidArgument);
}

TEST(Adaptive, UniformBreaks) {
  const auto b = uniform_breaks(-1, 1, 0.3);
  EXPECT_EQ(b.front(), -1);
  EXPECT_EQ(b.back(), 1);
  for (std::size_t k = 1; k < b.size(); ++k) EXPECT_LE(b[k] - b[k - 1], 0.3 + 1e-15);
}

TEST(W, ReferenceValues) {
  // 30-digit reference quadrature, frozen
  EXPECT_NEAR(w_eval(0.0), 2.0, 1e-14);
  EXPECT_NEAR(w_eval(0.5), 1.091180883502972, 1e-11);
  EXPECT_NEAR(w_eval(1.0), 0.82788053562708, 1e-11);
  EXPECT_NEAR(w_eval(2.5), 0.6193540254143791, 1e-11);
  EXPECT_NEAR(w_eval(7.0), 0.4379409512138105, 1e-11);
  EXPECT_NEAR(w_eval(20.25), 0.3127549127548682, 1e-11);
  EXPECT_NEAR(w_eval(-7.0), w_eval(7.0), 1e-14);
}

TEST(W, LargeThetaExpansion) {
  // references from 25-digit quadrature on cube-root panels
  EXPECT_NEAR(w_eval(300.0), 0.12520874054066706, 1e-12);
  EXPECT_NEAR(w_eval(-1000.0), 0.083818929036148143, 1e-12);
  // the expansion and the panel quadrature agree well below the switch point
  for (double t : {30.5, 100.0, 180.25, 255.0})
    EXPECT_NEAR(w_asymptotic(t), w_integral(t).value, 1e-11) << t;
  EXPECT_NEAR(w_eval(kWAsymptoticTheta * (1 - 1e-13)), w_eval(kWAsymptoticTheta * (1 + 1e-13)), 1e-11);
}

TEST(W, ImaginaryPartCancels) {
  for (double t : {0.3, 1.7, 12.0, -40.5}) {
    const auto z = w_eval_complex(t);
    EXPECT_LE(std::fabs(z.imag()), 1e-10);
    EXPECT_NEAR(z.real(), w_eval(t), 1e-11);
  }
}

TEST(V, ScalingAndDecay) {
  EXPECT_NEAR(v_eval(0, 7).real(), 14.0, 1e-12);
  for (double P : {1.0, 5.0, 30.0}) {
    for (double lb = -8; lb <= 2; lb += 0.25) {
      const double beta = std::pow(10.0, lb);
      const double mag = std::abs(v_eval(beta, P));
      EXPECT_LE(mag, 2 * P + 1e-9);
      EXPECT_LE(mag, 3 * P * std::pow(1 + P * P * P * beta, -1.0 / 3)) << P << ' ' << beta;
    }
  }
  EXPECT_NEAR(v_eval(0.01, 4).real(), 4 * w_eval(0.64), 1e-11);
}

TEST(WTable, MatchesDirectEvaluation) {
  const WTable table(30.0);
  for (double t = -30; t <= 30; t += 0.173) EXPECT_NEAR(table(t), w_eval(t), 1e-12) << t;
  EXPECT_NEAR(table(45.0), w_eval(45.0), 1e-12);
}
