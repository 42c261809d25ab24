#include "diagcubic/weyl.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/kernels/phase_sums.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace diagcubic {

namespace {

constexpr std::size_t kBlock = 1 << 14;

void check_P(std::int64_t P) {
  if (P < 0) throw InvalidArgument("P must be non-negative");
  if (P > kMaxWeylP) throw InvalidArgument("P exceeds the exact-cube range of the Weyl sum kernels");
}

void check_alpha(const RationalAlpha& a) {
  if (a.q <= 0) throw InvalidArgument("alpha denominator must be positive");
}

// Compensated accumulation of block results.
struct BlockSum {
  double re = 0, im = 0, cre = 0, cim = 0;
  static void add(double& s, double& c, double x) {
    const double t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  void add(std::complex<double> z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  std::complex<double> value() const { return {re + cre, im + cim}; }
};

template <class Gen>
std::complex<double> blocked_scaled(double alpha, std::size_t n, Gen&& gen) {
  alpha -= std::floor(alpha);
  std::vector<double> buf;
  buf.reserve(std::min(n, kBlock));
  BlockSum total;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t end = std::min(n, start + kBlock);
    buf.clear();
    for (std::size_t k = start; k < end; ++k) buf.push_back(gen(k));
    total.add(kernels::cis_sum_scaled(alpha, buf.data(), buf.size()));
  }
  return total.value();
}

template <class Gen>
std::complex<double> blocked_rational(const RationalAlpha& alpha, std::size_t n, Gen&& gen) {
  check_alpha(alpha);
  const __int128 q = alpha.q;
  __int128 a = alpha.a % q;
  if (a < 0) a += q;
  std::vector<double> buf;
  buf.reserve(std::min(n, kBlock));
  BlockSum total;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t end = std::min(n, start + kBlock);
    buf.clear();
    for (std::size_t k = start; k < end; ++k) {
      __int128 x = gen(k) % q;
      if (x < 0) x += q;
      const __int128 c = (x * x % q) * x % q;
      buf.push_back(double(std::int64_t(a * c % q)) / double(alpha.q));
    }
    total.add(kernels::cis_sum(buf.data(), buf.size()));
  }
  return total.value();
}

}  // namespace

bool parse_alpha(const std::string& text, RationalAlpha& exact, double& approx) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      exact.a = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw InvalidArgument("bad numerator");
      const std::string den = text.substr(slash + 1);
      exact.q = std::stoll(den, &used);
      if (used != den.size() || exact.q <= 0) throw InvalidArgument("bad denominator");
      approx = double(exact.a) / double(exact.q);
      return true;
    }
    std::size_t used = 0;
    approx = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(approx)) throw InvalidArgument("bad number");
    return false;
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse alpha '" + text + "' (use a/q or a decimal)");
  }
}

std::complex<double> f_eval(double alpha, std::int64_t P) {
  check_P(P);
  return blocked_scaled(alpha, std::size_t(2 * P + 1), [P](std::size_t k) {
    const double x = double(std::int64_t(k) - P);
    return x * x * x;
  });
}

std::complex<double> f_eval(const RationalAlpha& alpha, std::int64_t P) {
  check_P(P);
  return blocked_rational(alpha, std::size_t(2 * P + 1), [P](std::size_t k) { return __int128(std::int64_t(k) - P); });
}

std::complex<double> cubic_phase_sum(double alpha, const std::vector<std::int64_t>& xs) {
  for (auto x : xs)
    if (std::llabs(x) > kMaxWeylP) throw InvalidArgument("|x| exceeds the exact-cube range");
  return blocked_scaled(alpha, xs.size(), [&](std::size_t k) {
    const double x = double(xs[k]);
    return x * x * x;
  });
}

std::complex<double> cubic_phase_sum(const RationalAlpha& alpha, const std::vector<std::int64_t>& xs) {
  return blocked_rational(alpha, xs.size(), [&](std::size_t k) { return __int128(xs[k]); });
}

std::complex<double> g_eval(double alpha, const SmoothSet& smooth) { return cubic_phase_sum(alpha, smooth.members); }

std::complex<double> g_eval(const RationalAlpha& alpha, const SmoothSet& smooth) {
  return cubic_phase_sum(alpha, smooth.members);
}

std::complex<double> g_eval(double alpha, std::int64_t P, std::int64_t R) { return g_eval(alpha, smooth_set(P, R)); }

}  // namespace diagcubic
