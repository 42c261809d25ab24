#include "diagcubic/congenial.hpp"

#include "diagcubic/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace diagcubic {

void CongenialType::validate() const {
  auto bad = [&](const std::string& why) { throw InvalidArgument("type " + to_string() + ": " + why); };
  if (is_formal()) {
    if (n < 1) bad("formal type needs n >= 1");
    if (r < 2) bad("formal type needs r >= 2");
    return;
  }
  if (n < 0 || r < 1) bad("need n >= 0 and r >= 1");
  if (n >= 1 && r < 2) bad("linked blocks need r >= 2");
  if (rho < 1) bad("need rho >= 1");
  if (u < 1 || u > t) bad("need 1 <= u <= t");
}

CongenialType CongenialType::resolved() const {
  if (!is_formal()) return *this;
  validate();
  return CongenialType{n - 1, r, r, 1, 3 * r - 3};
}

std::string CongenialType::to_string() const {
  std::ostringstream out;
  out << '(' << n << ',' << r << ';' << rho << ',' << u << ',' << t << ')';
  return out.str();
}

CongenialType parse_congenial_type(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned.push_back((c == ',' || c == ';' || c == '(' || c == ')') ? ' ' : c);
  std::istringstream in(cleaned);
  std::vector<long long> v;
  long long x;
  while (in >> x) v.push_back(x);
  if (!in.eof() || v.size() != 5) throw InvalidArgument("expected a type 'n,r,rho,u,t', got '" + text + "'");
  for (long long e : v)
    if (e < 0 || e > 1000000) throw InvalidArgument("type entries must be small non-negative integers");
  CongenialType ty{int(v[0]), int(v[1]), int(v[2]), int(v[3]), int(v[4])};
  ty.validate();
  return ty;
}

LinkedBlockDecomposition standard_decomposition(const CongenialType& ty) {
  const CongenialType t = ty.resolved();
  t.validate();
  LinkedBlockDecomposition d;
  d.head = {std::size_t(t.rho), std::size_t(t.t), std::size_t(t.rho), std::size_t(t.t)};
  std::size_t i = t.rho, j = t.t;
  const std::size_t w = 3 * std::size_t(t.r - 1);
  for (int l = 0; l < t.n; ++l) {
    i += t.r - 1;
    j += w;
    d.blocks.push_back({std::size_t(t.r), w, i, j});
  }
  return d;
}

int head_line_prefix(const IntMatrix& head) {
  int k = 0;
  while (std::size_t(k) < head.cols()) {
    std::vector<std::size_t> idx(k + 1);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (rank_exact(head.select_columns(idx)) != 1) break;
    ++k;
  }
  return k;
}

Verdict verify_congenial(const IntMatrix& d, const LinkedBlockDecomposition& decomp, const CongenialType& ty) {
  ty.validate();
  const CongenialType t = ty.resolved();
  if (d.rows() != std::size_t(t.R()) || d.cols() != std::size_t(t.S())) {
    throw InvalidArgument("matrix is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + " but type " +
                          ty.to_string() + " needs " + std::to_string(t.R()) + "x" + std::to_string(t.S()));
  }
  if (!(decomp == standard_decomposition(t))) {
    throw InvalidArgument("decomposition does not follow the linked-block layout of type " + ty.to_string());
  }

  const std::size_t nr = d.rows(), nc = d.cols();
  std::vector<char> inside(nr * nc, 0);
  auto mark = [&](const BlockPlacement& b) {
    for (std::size_t i = b.first_row(); i < b.corner_row; ++i)
      for (std::size_t j = b.first_col(); j < b.corner_col; ++j) inside[i * nc + j] = 1;
  };
  mark(decomp.head);
  for (const auto& b : decomp.blocks) mark(b);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (!inside[i * nc + j] && d(i, j) != 0) {
        return Verdict::fail("nonzero entry outside the block footprints at row " + std::to_string(i + 1) +
                             ", column " + std::to_string(j + 1));
      }
  for (std::size_t j = 0; j < nc; ++j)
    if (d.column_is_zero(j)) return Verdict::fail("column " + std::to_string(j + 1) + " is zero");

  for (std::size_t l = 0; l < decomp.blocks.size(); ++l) {
    const auto& b = decomp.blocks[l];
    if (!is_highly_nonsingular(d.submatrix(b.first_row(), b.first_col(), b.rows, b.cols)))
      return Verdict::fail("block B_" + std::to_string(l + 1) + " is not highly non-singular");
  }

  const IntMatrix head = d.submatrix(0, 0, decomp.head.rows, decomp.head.cols);
  if (t.rho == 1) {
    for (std::size_t j = 0; j < head.cols(); ++j)
      if (head(0, j) == 0) return Verdict::fail("one-row head has a zero entry");
    return Verdict::pass();
  }
  std::vector<std::size_t> tail(t.t - t.u + 1);
  std::iota(tail.begin(), tail.end(), std::size_t(t.u - 1));
  if (!is_highly_nonsingular(head.select_columns(tail)))
    return Verdict::fail("last t-u+1 columns of the head are not highly non-singular");
  const int line = head_line_prefix(head);
  if (line != t.u) {
    return Verdict::fail("head has its first " + std::to_string(line) + " columns on a line, type declares u=" +
                         std::to_string(t.u));
  }
  return Verdict::pass();
}

Verdict verify_congenial(const IntMatrix& d, const CongenialType& ty) {
  return verify_congenial(d, standard_decomposition(ty), ty);
}

long long delta(long long rho, long long w) {
  if (w == 3 * rho && w > 0) return 1;
  return std::max<long long>(0, w - 3 * rho);
}

bool delta_star_admissible(long long rho, long long u, long long t) {
  if (rho < 0 || u < 0 || t < 0 || u > t) return false;
  return u < 3 || rho >= 1;
}

long long delta_star(long long rho, long long u, long long t) {
  if (!delta_star_admissible(rho, u, t)) {
    throw InvalidArgument("delta_star(" + std::to_string(rho) + "," + std::to_string(u) + "," + std::to_string(t) +
                          ") is outside its domain");
  }
  if (u <= 2) return delta(rho, t);
  return delta(rho - 1, t - u) + delta(1, u);
}

DeltaStarSweep sweep_delta_star(int rho_max, int t_max) {
  DeltaStarSweep out;
  for (int rho = 1; rho <= rho_max; ++rho)
    for (int t = 0; t <= t_max; ++t)
      for (int u = 0; u <= t; ++u) {
        long long lhs = 0;
        int branch = 0;
        if (t < 3 * rho) {
          if (!delta_star_admissible(rho, u, t - 1) || !delta_star_admissible(rho - 1, u, t - 1)) {
            ++out.skipped;
            continue;
          }
          branch = 1;
          lhs = std::max(delta_star(rho, u, t - 1), delta_star(rho - 1, u, t - 1) - 1);
        } else if (u >= 2) {
          if (!delta_star_admissible(rho, u - 2, t - 2) || !delta_star_admissible(rho - 1, 1, t - u)) {
            ++out.skipped;
            continue;
          }
          branch = 2;
          lhs = std::max(delta_star(rho, u - 2, t - 2) + 1, delta_star(rho - 1, 1, t - u) + u - 3);
        } else {
          continue;
        }
        ++out.checked;
        const long long rhs = delta_star(rho, u, t);
        if (lhs > rhs) out.violations.push_back({rho, u, t, branch, lhs, rhs});
      }
  return out;
}

const char* move_name(DeletionMove m) {
  switch (m) {
    case DeletionMove::DropLastColumn: return "drop-col-t";
    case DeletionMove::DropPivotRowAndLastColumn: return "drop-row2-col-t";
    case DeletionMove::DropFirstTwoColumns: return "drop-first-two-cols";
    case DeletionMove::DropFirstRowAndLineColumns: return "drop-row1-first-u-cols";
  }
  return "?";
}

std::vector<DeletionMove> all_deletion_moves() {
  return {DeletionMove::DropLastColumn, DeletionMove::DropPivotRowAndLastColumn, DeletionMove::DropFirstTwoColumns,
          DeletionMove::DropFirstRowAndLineColumns};
}

CongenialType apply_deletion_move(const CongenialType& ty, DeletionMove move) {
  ty.validate();
  auto refuse = [&](const char* why) -> CongenialType {
    throw InvalidArgument(std::string(move_name(move)) + " is not applicable to " + ty.to_string() + ": " + why);
  };
  if (ty.is_formal()) return refuse("formal type");
  const auto [n, r, rho, u, t] = ty;
  switch (move) {
    case DeletionMove::DropLastColumn:
      if (t <= u) return refuse("needs t > u");
      return {n, r, rho, u, t - 1};
    case DeletionMove::DropPivotRowAndLastColumn:
      if (t <= u) return refuse("needs t > u");
      if (rho < 2) return refuse("needs rho >= 2");
      return {n, r, rho - 1, u, t - 1};
    case DeletionMove::DropFirstTwoColumns:
    case DeletionMove::DropFirstRowAndLineColumns:
      if (u < 2) return refuse("needs u >= 2");
      if (t == 2) {
        if (n < 1) return refuse("t = 2 leaves nothing when n = 0");
        return {n, r, 0, 0, 0};
      }
      if (t < 3 * rho) return refuse("needs t >= 3 rho");
      if (move == DeletionMove::DropFirstTwoColumns) return {n, r, rho, std::max(u - 2, 1), t - 2};
      if (rho < 2) return refuse("needs rho >= 2");
      if (t <= u) return refuse("needs t > u");
      return {n, r, rho - 1, 1, t - u};
  }
  return refuse("unknown move");
}

bool deletion_move_applicable(const CongenialType& ty, DeletionMove move) {
  try {
    apply_deletion_move(ty, move);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

DeletionOutcome realize_deletion_move(const IntMatrix& d, const CongenialType& ty, DeletionMove move) {
  DeletionOutcome out;
  out.type = apply_deletion_move(ty, move);
  if (d.rows() != std::size_t(ty.R()) || d.cols() != std::size_t(ty.S()))
    throw InvalidArgument("matrix shape does not match type " + ty.to_string());
  const std::size_t rho = ty.rho, u = ty.u, t = ty.t;
  std::vector<std::size_t> guarded;
  if (ty.n >= 1) guarded.push_back(rho - 1);  // glued to B_1

  auto fail = [&](std::string why) {
    out.realized = false;
    out.reason = std::move(why);
    return out;
  };

  try {
    switch (move) {
      case DeletionMove::DropLastColumn:
        out.matrix = delete_columns(d, {t - 1});
        break;
      case DeletionMove::DropPivotRowAndLastColumn: {
        std::size_t k = 1;
        if (ty.n >= 1 && k == rho - 1) k = 0;
        IntMatrix m = row_normalize_pivot(d, {{{t - 1, k}}, guarded});
        out.matrix = delete_columns(delete_rows(m, {k}), {t - 1});
        break;
      }
      case DeletionMove::DropFirstTwoColumns:
      case DeletionMove::DropFirstRowAndLineColumns:
        if (t == 2) {
          if (rho != 1) return fail("t = 2 with rho >= 2 leaves head rows without support");
          out.matrix = delete_columns(d, {0, 1});
        } else if (move == DeletionMove::DropFirstTwoColumns) {
          out.matrix = delete_columns(d, {0, 1});
        } else {
          PivotSpec spec{{}, guarded};
          std::vector<std::size_t> cols;
          for (std::size_t c = 0; c < u; ++c) {
            spec.pivots.push_back({c, 0});
            cols.push_back(c);
          }
          IntMatrix m = row_normalize_pivot(d, spec);
          out.matrix = delete_columns(delete_rows(m, {0}), cols);
        }
        break;
    }
  } catch (const UnachievablePattern& e) {
    return fail(e.what());
  }
  out.realized = true;
  return out;
}

std::pair<IntMatrix, CongenialType> merge_head_into_first_block(const IntMatrix& d, const CongenialType& ty) {
  ty.validate();
  if (ty.is_formal() || ty.n < 1 || ty.u != ty.t)
    throw InvalidArgument("merging needs n >= 1 and u = t, got " + ty.to_string());
  if (ty.rho != 1)
    throw InvalidArgument("merging needs a one-row head; with rho >= 2 the head decouples from B_1");
  if (d.rows() != std::size_t(ty.R()) || d.cols() != std::size_t(ty.S()))
    throw InvalidArgument("matrix shape does not match type " + ty.to_string());
  // With one head row there is nothing to eliminate: the head row is
  // already B_1's top row, so only the bookkeeping changes.
  return {d, CongenialType{ty.n - 1, ty.r, ty.r, std::max(ty.u, 1), 3 * ty.r - 3 + ty.u}};
}

}  // namespace diagcubic
