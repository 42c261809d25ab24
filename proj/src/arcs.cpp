#include "diagcubic/arcs.hpp"

#include "diagcubic/errors.hpp"

#include <cmath>
#include <numeric>

namespace diagcubic {

namespace {

constexpr double kMaxScan = 5e7;

void check_alpha(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw InvalidArgument("alpha must lie in [0, 1)");
}

// First (q, a) by increasing q (then a) with |q alpha - a| <= width(q).
template <class Width>
std::optional<ArcMatch> scan(long double alpha, std::int64_t qmax, Width&& width) {
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const long double qa = q * alpha;
    const long double w = width(q);
    std::int64_t lo = std::int64_t(std::ceil(qa - w)), hi = std::int64_t(std::floor(qa + w));
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, q);
    for (std::int64_t a = lo; a <= hi; ++a)
      if (std::gcd(a, q) == 1 && std::fabs(qa - a) <= w) return ArcMatch{q, a};
  }
  return std::nullopt;
}

}  // namespace

double ArcParameters::Q() const { return std::pow(L, 10.0 * r); }

void ArcParameters::validate() const {
  if (!(P >= 1) || !(L > 0) || r < 1) throw InvalidArgument("arc parameters need P >= 1, L > 0, r >= 1");
}

std::optional<ArcMatch> classify_arc(double alpha, const ArcParameters& params) {
  params.validate();
  check_alpha(alpha);
  if (params.P > kMaxScan) throw InvalidArgument("P too large for an exhaustive arc scan");
  const long double w = 1.0L / (6.0L * params.P * params.P);
  return scan(alpha, std::int64_t(std::floor(params.P)), [&](std::int64_t) { return w; });
}

std::optional<ArcMatch> narrow_arc(double alpha, const ArcParameters& params) {
  params.validate();
  check_alpha(alpha);
  if (params.L > kMaxScan) throw InvalidArgument("L too large for an exhaustive arc scan");
  const long double w = params.L / (static_cast<long double>(params.P) * params.P * params.P);
  return scan(alpha, std::int64_t(std::floor(params.L)), [&](std::int64_t) { return w; });
}

bool in_narrow_N(double alpha, const ArcParameters& params) { return narrow_arc(alpha, params).has_value(); }

std::optional<BoxMatch> box_match(const std::vector<double>& alpha, const ArcParameters& params) {
  params.validate();
  if (alpha.size() != std::size_t(params.r)) throw InvalidArgument("box membership needs r coordinates");
  for (double a : alpha) check_alpha(a);
  const long double Q = params.Q();
  if (Q > kMaxScan) throw InvalidArgument("Q too large for an exhaustive box scan");
  const long double w = Q / (static_cast<long double>(params.P) * params.P * params.P);
  const std::int64_t qmax = std::int64_t(std::floor(Q));
  for (std::int64_t q = 1; q <= qmax; ++q) {
    // candidate numerators per coordinate: |alpha_i - a/q| <= w
    std::vector<std::vector<std::int64_t>> cands(alpha.size());
    bool empty = false;
    for (std::size_t i = 0; i < alpha.size() && !empty; ++i) {
      const long double x = alpha[i];
      const std::int64_t lo = std::max<std::int64_t>(0, std::int64_t(std::ceil((x - w) * q)));
      const std::int64_t hi = std::min<std::int64_t>(q, std::int64_t(std::floor((x + w) * q)));
      for (std::int64_t a = lo; a <= hi; ++a)
        if (std::fabs(x - static_cast<long double>(a) / q) <= w) cands[i].push_back(a);
      empty = cands[i].empty();
      if (cands[i].size() > 64) throw InvalidArgument("box width too large for enumeration");
    }
    if (empty) continue;
    std::vector<std::size_t> pick(alpha.size(), 0);
    while (true) {
      std::int64_t g = q;
      for (std::size_t i = 0; i < pick.size(); ++i) g = std::gcd(g, cands[i][pick[i]]);
      if (g == 1) {
        BoxMatch m{q, {}};
        for (std::size_t i = 0; i < pick.size(); ++i) m.a.push_back(cands[i][pick[i]]);
        return m;
      }
      std::size_t i = pick.size();
      while (i > 0 && ++pick[i - 1] == cands[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

bool in_P_box(const std::vector<double>& alpha, const ArcParameters& params) {
  return box_match(alpha, params).has_value();
}

}  // namespace diagcubic
