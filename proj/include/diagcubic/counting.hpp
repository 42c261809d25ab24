#pragma once

// Exact solution counts for diagonal cubic systems and for the mean values
// that orthogonality turns into counts of doubled systems.

#include "diagcubic/complification.hpp"
#include "diagcubic/count_engine.hpp"
#include "diagcubic/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diagcubic {

// C x^3 = 0 with C an r x s integer matrix.
class DiagonalCubicSystem {
 public:
  // Throws InvalidArgument on an empty matrix, a zero column or entries
  // that do not fit in 64 bits.
  explicit DiagonalCubicSystem(IntMatrix c);

  const IntMatrix& matrix() const noexcept { return c_; }
  std::size_t r() const noexcept { return c_.rows(); }
  std::size_t s() const noexcept { return c_.cols(); }
  std::int64_t coefficient(std::size_t i, std::size_t j) const { return small_[i][j]; }
  std::vector<std::int64_t> column(std::size_t j) const;

 private:
  IntMatrix c_;
  std::vector<std::vector<std::int64_t>> small_;
};

struct CountSpec {
  std::int64_t P = 1;
  std::vector<std::size_t> smooth_indices;  // 0-based, restricted to A(P, R)
  std::int64_t R = 0;
  bool pairing = false;  // count the doubled system sum c_j (x_j^3 - y_j^3)
};

struct CountOptions {
  unsigned threads = 1;
  engine::Limits limits;
};

// Largest box radius accepted by the counting routines.
inline constexpr std::int64_t kMaxCountP = 100000;

// Value distributions of x^3 over [-P, P] and over A(P, R).
engine::Distribution cube_distribution(std::int64_t P);
engine::Distribution smooth_cube_distribution(std::int64_t P, std::int64_t R);
// x^3 - y^3 with x, y drawn from `d`.
engine::Distribution difference_distribution(const engine::Distribution& d);

// The zero-sum problems behind each count (exposed for dry runs).
engine::Problem problem_N(const DiagonalCubicSystem& sys, const CountSpec& spec);
engine::Problem problem_mean_value(const IntMatrix& d, std::int64_t P);
engine::Problem problem_K(const IntMatrix& c, std::int64_t P, std::int64_t R);
engine::Problem problem_J(const IntMatrix& b, std::int64_t P, std::int64_t R);

// Number of x in [-P, P]^s (designated coordinates smooth) with C x^3 = 0,
// or of (x, y) pairs when spec.pairing is set.
engine::Total count_N(const DiagonalCubicSystem& sys, const CountSpec& spec, const CountOptions& opts = {});

// I(P; D): pairs (x, y) in [-P, P]^{2S} with D (x^3 - y^3) = 0.
engine::Total count_mean_value(const IntMatrix& d, std::int64_t P, const CountOptions& opts = {});

// K(P; C) for r x 3r C: as I(P; C) with the first three variable pairs
// drawn from A(P, R).
engine::Total count_K(const IntMatrix& c, std::int64_t P, std::int64_t R, const CountOptions& opts = {});

// J(P; B) for columns b_0..b_{S+1}: forms b_1..b_S carry pairs (x_j, y_j)
// of integers in [-P, P]; b_0 carries u_1^3 + u_2^3 + u_3^3 and b_{S+1}
// carries -(v_1^3 + v_2^3 + v_3^3) with u, v in A(P, R).  This is the
// orthogonality count of g(b_0)^3 conj(g(b_{S+1}))^3 prod |f(b_j)|^2.
engine::Total count_J(const BicongenialMatrix& b, std::int64_t P, std::int64_t R, const CountOptions& opts = {});
// Same count for a raw matrix with at least two columns (no type check).
engine::Total count_J(const IntMatrix& b, std::int64_t P, std::int64_t R, const CountOptions& opts = {});

// Square-sum side of the doubling step.  For B normalized so that its last
// column lives on row R only (rows 0..R), let c(m) count the tuples
// (u in A(P,R)^3, x, y in [-P,P]^S) for which the forms b_0..b_S, with b_0
// weighted by u_1^3 + u_2^3 + u_3^3 and b_j by x_j^3 - y_j^3, vanish on
// rows 0..R-1 and take the value m on row R.  Returns sum_m c(m)^2.
engine::Problem problem_T(const IntMatrix& normalized_b, std::int64_t P, std::int64_t R);
engine::Total count_T(const IntMatrix& normalized_b, std::int64_t P, std::int64_t R, const CountOptions& opts = {});

enum class FitAbscissa { LogP, LogBox };  // log P or log(2P + 1)

struct ExponentFit {
  std::vector<std::pair<std::int64_t, double>> points;  // (P, count) actually used
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

// Least squares through (log P, log count).  Points with P < 4 are
// dropped; throws InvalidArgument if fewer than three remain, if P is not
// strictly increasing or a count is not positive.
ExponentFit fit_exponent(const std::vector<std::pair<std::int64_t, double>>& points,
                         FitAbscissa abscissa = FitAbscissa::LogP);

}  // namespace diagcubic
