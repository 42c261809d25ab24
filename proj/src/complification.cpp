#include "diagcubic/complification.hpp"

#include "diagcubic/errors.hpp"

#include <cmath>

namespace diagcubic {

namespace {

void check_shape(const IntMatrix& b, int n, int r) {
  if (n < 1 || r < 2) throw InvalidArgument("bicongenial type needs n >= 1 and r >= 2");
  const std::size_t R = std::size_t(n) * (r - 1), S = 3 * R;
  if (b.rows() != R + 1 || b.cols() != S + 2) {
    throw InvalidArgument("bicongenial type (" + std::to_string(n) + "," + std::to_string(r) + ") needs a " +
                          std::to_string(R + 1) + "x" + std::to_string(S + 2) + " matrix, got " +
                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

CongenialType orientation_type(int n, int r) { return {n - 1, r, r, 1, 3 * r - 2}; }

IntMatrix forward_orientation(const IntMatrix& b) {
  if (b.cols() < 2) throw InvalidArgument("bicongenial matrix needs at least two columns");
  return b.submatrix(0, 0, b.rows(), b.cols() - 1);
}

IntMatrix reversed_orientation(const IntMatrix& b) {
  if (b.cols() < 2) throw InvalidArgument("bicongenial matrix needs at least two columns");
  const std::size_t nr = b.rows(), nc = b.cols();
  IntMatrix out(nr, nc - 1);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k + 1 < nc; ++k) out(i, k) = b(nr - 1 - i, nc - 1 - k);
  return out;
}

Verdict verify_bicongenial(const IntMatrix& b, int n, int r) {
  check_shape(b, n, r);
  const CongenialType ty = orientation_type(n, r);
  if (Verdict v = verify_congenial(forward_orientation(b), ty); !v) return Verdict::fail("forward: " + v.reason);
  if (Verdict v = verify_congenial(reversed_orientation(b), ty); !v) return Verdict::fail("reversed: " + v.reason);
  return Verdict::pass();
}

BicongenialMatrix BicongenialMatrix::from_matrix(IntMatrix b, int n, int r) {
  if (Verdict v = verify_bicongenial(b, n, r); !v) {
    throw InvalidArgument("not bicongenial of type (" + std::to_string(n) + "," + std::to_string(r) + "): " + v.reason);
  }
  return BicongenialMatrix(std::move(b), n, r);
}

BicongenialMatrix build_B0(const IntMatrix& c) {
  const std::size_t r = c.rows();
  if (r < 2 || c.cols() != 3 * r) throw InvalidArgument("build_B0 needs an r x 3r matrix with r >= 2");
  if (!is_highly_nonsingular(c)) throw InvalidArgument("build_B0 needs a highly non-singular matrix");
  std::vector<std::size_t> order{0};
  for (std::size_t j = 3; j < 3 * r; ++j) order.push_back(j);
  order.push_back(1);
  IntMatrix b0 = c.select_columns(order);
  if (Verdict v = verify_bicongenial(b0, 1, int(r)); !v) throw ContractViolation("B0 failed verification: " + v.reason);
  return BicongenialMatrix::from_matrix(std::move(b0), 1, int(r));
}

Complification complify_detailed(const BicongenialMatrix& bic) {
  const int n = bic.n(), r = bic.r();
  const std::size_t R = bic.R(), S = bic.S();
  PivotSpec spec;
  spec.pivots.push_back({S + 1, R});
  // Row shared by the last two forward blocks must not leak into row R+1.
  if (n >= 2) spec.protected_rows.push_back(R - std::size_t(r) + 1);
  IntMatrix b;
  try {
    b = row_normalize_pivot(bic.matrix(), spec);
  } catch (const UnachievablePattern& e) {
    throw ContractViolation(std::string("normalization of a verified bicongenial matrix failed: ") + e.what());
  }

  IntMatrix star(2 * R + 1, 2 * S + 2);
  for (std::size_t i = 0; i <= S; ++i)
    for (std::size_t k = 0; k <= R; ++k) star(k, i) = b(k, i);
  for (std::size_t i = S + 1; i <= 2 * S + 1; ++i) {
    const std::size_t src = 2 * S + 1 - i;
    for (std::size_t k = 0; k <= R; ++k) star(2 * R - k, i) = b(k, src);
  }
  if (Verdict v = verify_bicongenial(star, 2 * n, r); !v)
    throw ContractViolation("complified matrix failed verification: " + v.reason);
  return {std::move(b), BicongenialMatrix::from_matrix(std::move(star), 2 * n, r)};
}

BicongenialMatrix complify(const BicongenialMatrix& b) { return complify_detailed(b).doubled; }

void AnalyticConstants::validate() const {
  if (tau <= 0) throw InvalidArgument("tau must be positive");
  // 1/tau > 852 + 16 sqrt(2833)  <=>  x > 0 and x^2 > 256 * 2833, x = 1/tau - 852
  const Rational x = Rational(1) / tau - 852;
  if (!(x > 0 && x * x > Rational(256 * 2833))) throw InvalidArgument("tau too large: need 1/tau > 852 + 16 sqrt(2833)");
}

int choose_l(double delta, const AnalyticConstants& consts) {
  if (!(delta > 0) || !std::isfinite(delta)) throw InvalidArgument("delta must be a positive finite number");
  consts.validate();
  const Rational target(delta);  // exact binary value of the double
  Rational lhs = 2 * (Rational(2) - consts.xi());
  int l = 0;
  while (!(lhs < target)) {
    lhs /= 2;
    ++l;
  }
  return l;
}

TerminalMatrix build_terminal_D(const BicongenialMatrix& b) {
  const std::size_t S = b.S();
  std::vector<std::size_t> order{0, 0, 0};
  for (std::size_t j = 1; j <= S; ++j) order.push_back(j);
  TerminalMatrix out{b.matrix().select_columns(order), CongenialType{b.n() - 1, b.r(), b.r(), 3, 3 * b.r()}};
  if (Verdict v = verify_congenial(out.d, out.type); !v)
    throw ContractViolation("terminal matrix failed verification: " + v.reason);
  return out;
}

}  // namespace diagcubic
