#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace diagcubic {

// P is the box scale; L stands in for log log P and is set directly.
struct ArcParameters {
  double P = 0;
  double L = 1;
  int r = 1;

  double Q() const;  // L^(10 r)
  void validate() const;
};

struct ArcMatch {
  std::int64_t q = 0;
  std::int64_t a = 0;
};

struct BoxMatch {
  std::int64_t q = 0;
  std::vector<std::int64_t> a;
};

// M(q,a): |q alpha - a| <= 1/(6 P^2), 0 <= a <= q <= P, gcd(a,q) = 1.
// Scans q upwards and returns the first hit; nullopt means minor arc.
std::optional<ArcMatch> classify_arc(double alpha, const ArcParameters& params);

// N(q,a): |q alpha - a| <= L P^-3 with 0 <= a <= q <= L.
std::optional<ArcMatch> narrow_arc(double alpha, const ArcParameters& params);
bool in_narrow_N(double alpha, const ArcParameters& params);

// P(q,a): |alpha_i - a_i/q| <= Q P^-3 for all i, 0 <= a_i <= q <= Q,
// gcd(a_1, ..., a_r, q) = 1.
std::optional<BoxMatch> box_match(const std::vector<double>& alpha, const ArcParameters& params);
bool in_P_box(const std::vector<double>& alpha, const ArcParameters& params);

}  // namespace diagcubic
