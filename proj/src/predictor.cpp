#include "diagcubic/predictor.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/kernels/phase_sums.hpp"
#include "diagcubic/parallel.hpp"

#include <cmath>
#include <numeric>

namespace diagcubic {

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}
i64 mulmod(i64 a, i64 b, i64 m) { return i64(__int128(a) * b % m); }

void check_q(i64 q) {
  if (q < 1 || q > kMaxSeriesQ) throw InvalidArgument("q must lie in [1, " + std::to_string(kMaxSeriesQ) + "]");
}

}  // namespace

std::complex<double> gauss_cubic_sum(std::int64_t q, std::int64_t a) {
  check_q(q);
  const i64 am = mod(a, q);
  std::vector<double> ph(std::size_t(q), 0.0);
  for (i64 x = 1; x <= q; ++x) ph[std::size_t(x - 1)] = double(mulmod(am, mulmod(mulmod(x, x, q), x, q), q)) / double(q);
  return kernels::cis_sum(ph.data(), ph.size());
}

std::vector<std::complex<double>> gauss_cubic_table(std::int64_t q) {
  check_q(q);
  std::vector<i64> count(std::size_t(q), 0);
  for (i64 x = 0; x < q; ++x) ++count[std::size_t(mulmod(mulmod(x, x, q), x, q))];
  std::vector<i64> cubes;
  for (i64 v = 0; v < q; ++v)
    if (count[std::size_t(v)]) cubes.push_back(v);
  if ((long double)q * cubes.size() > 2e9L) throw ResourceGuardError("cubic Gauss sum table too large");
  std::vector<std::complex<double>> table(static_cast<std::size_t>(q));
  std::vector<double> ph;
  for (i64 a = 0; a < q; ++a) {
    // expand multiplicities so the kernel sees one phase per x
    ph.clear();
    for (i64 v : cubes)
      for (i64 k = 0; k < count[std::size_t(v)]; ++k) ph.push_back(double(mulmod(a, v, q)) / double(q));
    table[std::size_t(a)] = kernels::cis_sum(ph.data(), ph.size());
  }
  return table;
}

double A_q(const DiagonalCubicSystem& sys, std::int64_t q) {
  check_q(q);
  const std::size_t r = sys.r(), s = sys.s();
  if (std::pow((long double)q, (long double)r) * s > 4e9L) throw ResourceGuardError("A(q) enumeration of q^r residues too large");
  if (q == 1) return 1.0;
  const auto S = gauss_cubic_table(q);
  std::vector<std::vector<i64>> c(r, std::vector<i64>(s));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) c[i][j] = mod(sys.coefficient(i, j), q);
  std::vector<i64> a(r, 0);
  std::complex<long double> acc = 0;
  const double qd = double(q);
  while (true) {
    std::size_t k = 0;
    while (k < r && ++a[k] == q) a[k++] = 0;
    if (k == r) break;
    i64 g = q;
    for (i64 v : a) g = std::gcd(g, v);
    if (g != 1) continue;
    std::complex<double> prod = 1;
    for (std::size_t j = 0; j < s; ++j) {
      i64 gam = 0;
      for (std::size_t i = 0; i < r; ++i) gam = (gam + mulmod(a[i], c[i][j], q)) % q;
      prod *= S[std::size_t(gam)] / qd;
    }
    acc += std::complex<long double>(prod.real(), prod.imag());
  }
  if (std::fabs(double(acc.imag())) > 1e-9) throw ContractViolation("A(q) has a non-negligible imaginary part");
  return double(acc.real());
}

SingularSeries singular_series(const DiagonalCubicSystem& sys, std::int64_t Q, unsigned threads) {
  check_q(Q);
  SingularSeries out;
  out.Q = Q;
  out.A = map_chunks<double>(std::size_t(Q), std::size_t(Q), threads,
                             [&](std::size_t b, std::size_t) { return A_q(sys, std::int64_t(b) + 1); });
  out.epsilon = 1.0 / (6.0 * double(sys.r()));
  for (std::size_t q = 1; q <= out.A.size(); ++q) {
    out.value += out.A[q - 1];
    if (q >= 2) out.c_fit = std::max(out.c_fit, std::fabs(out.A[q - 1]) * std::pow(double(q), 1 + out.epsilon));
  }
  out.tail_bound = out.c_fit * std::pow(double(Q), -out.epsilon) / out.epsilon;
  out.convergence_hypothesis = sys.s() >= 6 * sys.r() + 1;
  return out;
}

namespace {

struct NestedIntegral {
  const DiagonalCubicSystem& sys;
  const WTable& w;
  double X;
  double tol;
  std::vector<double> spacing;  // per variable

  // Integrate over theta_level..theta_r with gamma_j partially summed in base.
  QuadResult integrate(std::size_t level, const std::vector<double>& base, unsigned threads) const {
    const std::size_t r = sys.r(), s = sys.s();
    const bool outer = level == 0;
    auto f = [&](const double* x, std::size_t n, double* val, double* err) {
      std::vector<double> gam(s);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < s; ++j) gam[j] = base[j] + x[k] * double(sys.coefficient(level, j));
        if (level + 1 == r) {
          double prod = 1;
          for (std::size_t j = 0; j < s; ++j) prod *= w(gam[j]);
          val[k] = prod;
          err[k] = 0;
        } else {
          const QuadResult inner = integrate(level + 1, gam, 1);
          val[k] = inner.value;
          err[k] = inner.error;
        }
      }
    };
    AdaptiveOptions opts;
    const double width = outer ? X : 2 * X;
    opts.abs_tol = outer ? 0.5 * tol : tol / (4 * std::pow(2 * X, double(level)));
    opts.threads = threads;
    opts.max_panels = 200000;
    // the integrand is even in theta as a whole, so the outermost variable
    // only needs [0, X]
    const auto breaks = uniform_breaks(outer ? 0.0 : -X, X, std::min(spacing[level], width));
    QuadResult res = integrate_adaptive(f, breaks, opts);
    if (outer) {
      res.value *= 2;
      res.error *= 2;
    }
    return res;
  }
};

}  // namespace

SingularIntegral singular_integral(const DiagonalCubicSystem& sys, double X, double tol, unsigned threads) {
  if (!(X > 0)) throw InvalidArgument("X must be positive");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  const std::size_t r = sys.r(), s = sys.s();
  if (r > 3) throw ResourceGuardError("tensor quadrature is limited to r <= 3");
  std::vector<double> spacing(r);
  long double nodes = 1;
  double theta_max = 0;
  for (std::size_t j = 0; j < s; ++j) {
    double t = 0;
    for (std::size_t i = 0; i < r; ++i) t += std::fabs(double(sys.coefficient(i, j)));
    theta_max = std::max(theta_max, t * X);
  }
  for (std::size_t i = 0; i < r; ++i) {
    double cmax = 0;
    for (std::size_t j = 0; j < s; ++j) cmax = std::max(cmax, std::fabs(double(sys.coefficient(i, j))));
    spacing[i] = cmax > 0 ? 1.0 / (2 * cmax) : 2 * X;
    nodes *= std::ceil(2 * X / spacing[i]) * 15;
  }
  if (nodes * s > 2e10L) throw ResourceGuardError("singular integral quadrature too large; lower X");
  const WTable w(theta_max + 1);
  NestedIntegral job{sys, w, X, tol, spacing};
  const QuadResult q = job.integrate(0, std::vector<double>(s, 0.0), threads);
  return {X, q.value, q.error, q.panels};
}

PredictionReport predict_and_compare(const DiagonalCubicSystem& sys, const std::vector<std::int64_t>& P_list,
                                     const PredictionOptions& opts) {
  PredictionReport rep;
  const std::size_t r = sys.r(), s = sys.s();
  rep.s_gt_6r = s > 6 * r;
  if (opts.enforce_hypotheses && !rep.s_gt_6r)
    throw InvalidArgument("prediction needs s > 6r (here s = " + std::to_string(s) + ", r = " + std::to_string(r) +
                          "); the singular series and integral are not known to converge");
  rep.highly_nonsingular = is_highly_nonsingular(sys.matrix());
  if (opts.run_local_check) {
    rep.local = local_check_all(sys, opts.local);
    rep.local_checked = true;
  }
  rep.series = singular_series(sys, opts.Q, opts.threads);
  rep.integral = singular_integral(sys, opts.X, opts.tol, opts.threads);
  CountSpec spec;
  for (std::int64_t P : P_list) {
    spec.P = P;
    PredictionRow row;
    row.P = P;
    row.count = count_N(sys, spec, opts.count);
    row.predicted = rep.series.value * rep.integral.value * std::pow(double(P), double(s) - 3.0 * double(r));
    row.ratio = double(row.count) / row.predicted;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace diagcubic
