#pragma once

// Circle-method main term for C x^3 = 0: cubic Gauss sums, the singular
// series, the singular integral and a comparison against exact counts.

#include "diagcubic/counting.hpp"
#include "diagcubic/local.hpp"
#include "diagcubic/quadrature.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace diagcubic {

// S(q, a) = sum_{x=1}^{q} e(a x^3 / q), phases reduced exactly mod q.
std::complex<double> gauss_cubic_sum(std::int64_t q, std::int64_t a);

// S(q, a) for all residues a mod q.
std::vector<std::complex<double>> gauss_cubic_table(std::int64_t q);

// Largest q accepted for A(q) (and the singular series cutoff).
inline constexpr std::int64_t kMaxSeriesQ = 100000;

// A(q) = q^{-s} sum_{a mod q, gcd(a_1..a_r, q) = 1} prod_j S(q, gamma_j(a)),
// gamma_j(a) = sum_i a_i c_ij.  Throws ResourceGuardError when q^r is too
// large, ContractViolation if the imaginary part exceeds 1e-9.
double A_q(const DiagonalCubicSystem& sys, std::int64_t q);

struct SingularSeries {
  std::int64_t Q = 0;
  double value = 0;             // sum_{q <= Q} A(q)
  std::vector<double> A;        // A[q - 1]
  double epsilon = 0;           // 1/(6r)
  double c_fit = 0;             // max_{2 <= q <= Q} |A(q)| q^{1 + epsilon}
  double tail_bound = 0;        // c_fit * sum_{q > Q} q^{-1-epsilon}, heuristic
  bool convergence_hypothesis = false;  // s/(3r) >= 2 + 1/(3r)
};

SingularSeries singular_series(const DiagonalCubicSystem& sys, std::int64_t Q, unsigned threads = 1);

struct SingularIntegral {
  double X = 0;
  double value = 0;  // normalized: the integral equals P^{s-3r} times this
  double error = 0;
  std::size_t panels = 0;
};

// int over [-X, X]^r of prod_j w(gamma_j(theta)) d theta.  Nested adaptive
// quadrature for r <= 3; throws ResourceGuardError otherwise or when the
// estimated work is too large.
SingularIntegral singular_integral(const DiagonalCubicSystem& sys, double X, double tol = 1e-8, unsigned threads = 1);

struct PredictionRow {
  std::int64_t P = 0;
  engine::Total count = 0;
  double predicted = 0;
  double ratio = 0;  // count / predicted
};

struct PredictionOptions {
  std::int64_t Q = 200;
  double X = 50;
  double tol = 1e-8;
  unsigned threads = 1;
  bool enforce_hypotheses = true;  // refuse unless s > 6r
  bool run_local_check = true;
  CountOptions count;
  LocalOptions local;
};

struct PredictionReport {
  bool s_gt_6r = false;
  bool highly_nonsingular = false;
  bool local_checked = false;
  LocalReport local;
  SingularSeries series;
  SingularIntegral integral;
  std::vector<PredictionRow> rows;
};

// Counts N(P) over the box and compares with S(Q) * J(X) * P^{s-3r}.
PredictionReport predict_and_compare(const DiagonalCubicSystem& sys, const std::vector<std::int64_t>& P_list,
                                     const PredictionOptions& opts = {});

}  // namespace diagcubic
