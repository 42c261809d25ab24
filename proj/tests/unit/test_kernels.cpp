#include "diagcubic/kernels/phase_sums.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace diagcubic::kernels;

namespace {

std::complex<long double> reference_cis(const std::vector<double>& phases) {
  std::complex<long double> acc = 0;
  for (double p : phases) {
    const long double t = 2 * 3.14159265358979323846264338327950288L * (p - std::floor(p));
    acc += std::complex<long double>(std::cos(t), std::sin(t));
  }
  return acc;
}

}  // namespace

TEST(Kernels, ScalarMatchesLongDoubleReference) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-50, 50);
  for (std::size_t n : {0, 1, 3, 4, 7, 8, 17, 1000}) {
    std::vector<double> ph(n);
    for (auto& p : ph) p = u(rng);
    const auto got = cis_sum(ph.data(), n, Isa::Scalar);
    const auto want = reference_cis(ph);
    EXPECT_NEAR(got.real(), double(want.real()), 1e-12 * (n + 1));
    EXPECT_NEAR(got.imag(), double(want.imag()), 1e-12 * (n + 1));
  }
}

TEST(Kernels, Avx2AgreesWithScalar) {
  if (!isa_supported(Isa::Avx2)) GTEST_SKIP() << "CPU without AVX2/FMA";
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::uniform_int_distribution<long long> iv(-(1LL << 40), 1LL << 40);
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 8, 9, 31, 64, 1001, 20000}) {
    std::vector<double> ph(n), w(n), vals(n);
    for (std::size_t k = 0; k < n; ++k) {
      ph[k] = u(rng);
      w[k] = u(rng) / 1e3;
      vals[k] = double(iv(rng));
    }
    const double tol = 1e-13 * (n + 1);
    const auto a = cis_sum(ph.data(), n, Isa::Scalar), b = cis_sum(ph.data(), n, Isa::Avx2);
    EXPECT_NEAR(a.real(), b.real(), tol) << n;
    EXPECT_NEAR(a.imag(), b.imag(), tol) << n;
    const double alpha = 0.123456789123;
    const auto c = cis_sum_scaled(alpha, vals.data(), n, Isa::Scalar);
    const auto d = cis_sum_scaled(alpha, vals.data(), n, Isa::Avx2);
    EXPECT_NEAR(c.real(), d.real(), tol) << n;
    EXPECT_NEAR(c.imag(), d.imag(), tol) << n;
    EXPECT_NEAR(cos_dot(ph.data(), w.data(), n, Isa::Scalar), cos_dot(ph.data(), w.data(), n, Isa::Avx2), tol) << n;
  }
}

TEST(Kernels, ScaledPhaseReductionIsExact) {
  // alpha * v with v near 2^50 loses every fractional digit if multiplied
  // naively; the split product must still land on e(v / 3).
  const double v = double((1LL << 50) + 1);  // = 1 mod 3
  for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
    if (!isa_supported(isa)) continue;
    const auto s = cis_sum_scaled(0.5, &v, 1, isa);
    EXPECT_NEAR(s.real(), -1.0, 1e-12) << isa_name(isa);
  }
}

TEST(Kernels, DispatchCanBeForced) {
  const Isa before = active_isa();
  set_active_isa(Isa::Scalar);
  EXPECT_EQ(active_isa(), Isa::Scalar);
  set_active_isa(before);
  EXPECT_EQ(active_isa(), before);
}
