#pragma once

#include "diagcubic/congenial.hpp"
#include "diagcubic/matrix.hpp"

namespace diagcubic {

// (R+1) x (S+2) matrix, R = n(r-1), S = 3R, columns b_0..b_{S+1}.  Both
// b_0..b_S and the reversed sequence b_{S+1}..b_1 (rows read bottom-up)
// are congenial of type (n-1, r; r, 1, 3r-2).
class BicongenialMatrix {
 public:
  // Verifies; throws InvalidArgument if B is not bicongenial of type (n, r).
  static BicongenialMatrix from_matrix(IntMatrix b, int n, int r);

  const IntMatrix& matrix() const noexcept { return b_; }
  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  std::size_t R() const noexcept { return std::size_t(n_) * (r_ - 1); }
  std::size_t S() const noexcept { return 3 * R(); }

 private:
  BicongenialMatrix(IntMatrix b, int n, int r) : b_(std::move(b)), n_(n), r_(r) {}
  IntMatrix b_;
  int n_;
  int r_;
};

// Type each orientation must verify as.
CongenialType orientation_type(int n, int r);

// Columns b_0..b_S.
IntMatrix forward_orientation(const IntMatrix& b);
// Columns b_{S+1}, b_S, ..., b_1 with the row order reversed.
IntMatrix reversed_orientation(const IntMatrix& b);

// Throws InvalidArgument on a shape mismatch.
Verdict verify_bicongenial(const IntMatrix& b, int n, int r);

// Columns c_1, c_4, c_5, ..., c_s, c_2 of an r x 3r highly non-singular C.
BicongenialMatrix build_B0(const IntMatrix& c);

struct Complification {
  IntMatrix normalized;    // B with column S+1 confined to row R+1
  BicongenialMatrix doubled;
};

// Doubling step: type (n, r) to type (2n, r).  The second half of the
// output reuses columns S..0 of the normalized input with variable index
// k mapped to 2R+2-k, so both halves share the variable of row R+1.
Complification complify_detailed(const BicongenialMatrix& b);
BicongenialMatrix complify(const BicongenialMatrix& b);

// tau is kept exact; xi = 1/4 - tau.
struct AnalyticConstants {
  Rational tau{1, 1704};

  Rational xi() const { return Rational(1, 4) - tau; }
  // Throws InvalidArgument unless 1/tau > 852 + 16 sqrt(2833).
  void validate() const;
};

// Smallest l >= 0 with 2^(1-l) (2 - xi) < delta, compared exactly.
int choose_l(double delta, const AnalyticConstants& consts = {});

struct TerminalMatrix {
  IntMatrix d;
  CongenialType type;
};

// Forms b_0, b_0, b_0, b_1, ..., b_S: type (n-1, r; r, 3, 3r) where n is
// the bicongenial n (a power of two along the pipeline).
TerminalMatrix build_terminal_D(const BicongenialMatrix& b);

}  // namespace diagcubic
