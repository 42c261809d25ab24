#include "diagcubic/arcs.hpp"
#include "diagcubic/errors.hpp"
#include "diagcubic/smooth.hpp"
#include "diagcubic/weyl.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace diagcubic;

namespace {

std::complex<long double> direct(long double alpha, const std::vector<std::int64_t>& xs) {
  std::complex<long double> acc = 0;
  for (auto x : xs) {
    const long double c = static_cast<long double>(x) * x * x;
    const long double t = 2 * 3.14159265358979323846264338327950288L * std::fmod(alpha * c, 1.0L);
    acc += std::complex<long double>(std::cos(t), std::sin(t));
  }
  return acc;
}

std::vector<std::int64_t> box(std::int64_t P) {
  std::vector<std::int64_t> xs;
  for (std::int64_t x = -P; x <= P; ++x) xs.push_back(x);
  return xs;
}

}  // namespace

TEST(Smooth, Examples) {
  const auto s = smooth_set(10, 2);
  EXPECT_EQ(s.members, (std::vector<std::int64_t>{-8, -4, -2, -1, 1, 2, 4, 8}));
  for (std::int64_t P : {2, 7, 30, 101}) {
    EXPECT_EQ(smooth_set(P, P).size(), std::size_t(2 * P));
    for (std::int64_t R = 2; R <= P; R += 3) {
      const auto set = smooth_set(P, R);
      EXPECT_TRUE(set.contains(1) && set.contains(-1));
      EXPECT_FALSE(set.contains(0));
      EXPECT_EQ(set.members, oracle::smooth_members(P, R)) << P << ' ' << R;
    }
  }
  EXPECT_THROW(smooth_set(10, 1), InvalidArgument);
  EXPECT_THROW(smooth_set(10, 11), InvalidArgument);
}

TEST(Smooth, LargestPrimeFactor) {
  EXPECT_EQ(largest_prime_factor(1), 1);
  EXPECT_EQ(largest_prime_factor(97), 97);
  EXPECT_EQ(largest_prime_factor(2 * 2 * 3 * 7 * 7), 7);
  EXPECT_EQ(primes_up_to(20), (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
}

TEST(Weyl, FExamples) {
  for (std::int64_t P : {1, 5, 100}) EXPECT_NEAR(f_eval(0.0, P).real(), 2.0 * P + 1, 1e-9);
  EXPECT_NEAR(f_eval(0.5, 1).real(), -1.0, 1e-12);
  EXPECT_NEAR(f_eval(RationalAlpha{1, 2}, 1).real(), -1.0, 1e-12);
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::int64_t> bits(0, (std::int64_t(1) << 30) - 1);
  for (int k = 0; k < 20; ++k) {
    const double a = std::ldexp(double(bits(rng)), -30);  // a + 1 stays exact
    const std::int64_t P = 1 + k * 37;
    const auto v = f_eval(a, P);
    EXPECT_LE(std::abs(v.imag()), 1e-10 * (2 * P + 1));
    EXPECT_LE(std::abs(v), 2.0 * P + 1 + 1e-9);
    const auto want = direct(a, box(P));
    EXPECT_NEAR(v.real(), double(want.real()), 1e-9 * P);
    EXPECT_NEAR(std::abs(f_eval(a + 1.0, P) - v), 0.0, 1e-7);
  }
}

TEST(Weyl, GExamples) {
  const auto s = smooth_set(10, 2);
  EXPECT_NEAR(g_eval(0.0, s).real(), 8.0, 1e-12);
  const auto want = direct(1.0L / 3, s.members);
  const auto got = g_eval(RationalAlpha{1, 3}, s);
  EXPECT_NEAR(got.real(), double(want.real()), 1e-12);
  EXPECT_NEAR(got.imag(), double(want.imag()), 1e-12);
  EXPECT_NEAR(std::abs(g_eval(1.0 / 3, s) - got), 0.0, 1e-12);
  for (double a : {0.1, 0.377, 0.9}) {
    EXPECT_NEAR(std::abs(g_eval(a, 50, 50) - (f_eval(a, 50) - 1.0)), 0.0, 1e-10);
    EXPECT_LE(std::abs(g_eval(a, 60, 5)), double(smooth_set(60, 5).size()) + 1e-9);
  }
}

TEST(Weyl, RationalPhasesAreExact) {
  // x^3 for x near 10^5 overflows double precision of alpha * x^3 modulo 1
  // unless the phase is reduced in integers.
  const std::int64_t P = 100000;
  const auto exact = f_eval(RationalAlpha{1, 7}, P);
  // cubes mod 7 take values 0, 1, 6 only; count directly
  std::array<long long, 7> hist{};
  for (std::int64_t x = -P; x <= P; ++x) ++hist[((x % 7 + 7) % 7) * ((x % 7 + 7) % 7) % 7 * ((x % 7 + 7) % 7) % 7];
  std::complex<long double> want = 0;
  for (int k = 0; k < 7; ++k) want += static_cast<long double>(hist[k]) * std::polar(1.0L, 2 * 3.14159265358979323846264338327950288L * k / 7);
  EXPECT_NEAR(exact.real(), double(want.real()), 1e-6);
  EXPECT_NEAR(exact.imag(), 0.0, 1e-6);
}

TEST(Weyl, ParsevalOnAFineGrid) {
  // With M > 2 P^3 the grid mean of |f|^2 counts x^3 = y^3 exactly.
  for (std::int64_t P : {3, 6}) {
    const std::int64_t M = 2 * P * P * P + 1;
    double mean = 0;
    for (std::int64_t k = 0; k < M; ++k) mean += std::norm(f_eval(RationalAlpha{k, M}, P));
    mean /= double(M);
    EXPECT_NEAR(mean, 2.0 * P + 1, 0.01 * (2 * P + 1));
  }
}

TEST(Weyl, ParseAlpha) {
  RationalAlpha r;
  double d = 0;
  EXPECT_TRUE(parse_alpha("3/7", r, d));
  EXPECT_EQ(r.a, 3);
  EXPECT_EQ(r.q, 7);
  EXPECT_FALSE(parse_alpha("0.25", r, d));
  EXPECT_DOUBLE_EQ(d, 0.25);
  EXPECT_THROW(parse_alpha("x", r, d), InvalidArgument);
}

TEST(Arcs, Examples) {
  ArcParameters p{100, 2, 1};
  auto m = classify_arc(0.0, p);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->q, 1);
  EXPECT_EQ(m->a, 0);
  m = classify_arc(0.5, p);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->q, 2);
  EXPECT_EQ(m->a, 1);

  const double golden = (std::sqrt(5.0) - 1) / 2;
  EXPECT_FALSE(classify_arc(golden, p));
  // independent scan
  bool hit = false;
  for (int q = 1; q <= 100; ++q)
    for (int a = 0; a <= q; ++a) hit |= std::fabs(q * golden - a) <= 1.0 / (6.0 * 100 * 100);
  EXPECT_FALSE(hit);
}

TEST(Arcs, MajorArcsAreDisjoint) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0, 1);
  const double P = 40;
  const double w = 1 / (6 * P * P);
  int majors = 0;
  for (int k = 0; k < 20000; ++k) {
    const double a = u(rng);
    int matches = 0;
    for (int q = 1; q <= P; ++q)
      for (int b = 0; b <= q; ++b)
        if (std::gcd(b, q) == 1 && std::fabs(q * a - b) <= w) ++matches;
    EXPECT_LE(matches, 1);
    const bool major = classify_arc(a, {P, 2, 1}).has_value();
    EXPECT_EQ(major, matches == 1);
    majors += major;
  }
  EXPECT_GT(majors, 0);
}

TEST(Arcs, NarrowAndBox) {
  ArcParameters p{1000, 3, 1};
  EXPECT_TRUE(in_narrow_N(1.0 / 3 + 5e-10, p));
  EXPECT_FALSE(in_narrow_N(1.0 / 3 + 1e-6, p));
  EXPECT_FALSE(in_narrow_N(0.25, p));  // q = 4 > L
  ArcParameters b{1000, 1.2, 2};
  EXPECT_NEAR(b.Q(), std::pow(1.2, 20), 1e-9);
  const auto hit = box_match({0.5, 0.0}, b);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->q, 2);
  EXPECT_EQ(hit->a, (std::vector<std::int64_t>{1, 0}));
  EXPECT_FALSE(in_P_box({0.123456, 0.654321}, b));
  EXPECT_THROW(in_P_box({0.5}, b), InvalidArgument);
}
