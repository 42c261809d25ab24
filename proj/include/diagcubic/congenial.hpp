#pragma once

#include "diagcubic/matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diagcubic {

// (n, r; rho, u, t).  S = 3n(r-1) + t columns, R = n(r-1) + rho rows.
// The formal type (n, r; 0, 0, 0) stands for (n-1, r; r, 1, 3r-3).
struct CongenialType {
  int n = 0;
  int r = 0;
  int rho = 0;
  int u = 0;
  int t = 0;

  long long S() const { return 3LL * n * (r - 1) + t; }
  long long R() const { return static_cast<long long>(n) * (r - 1) + rho; }
  bool is_formal() const { return rho == 0 && u == 0 && t == 0; }

  // Throws InvalidArgument when the tuple is not a type at all.
  void validate() const;
  // The ordinary type a formal type is identified with.
  CongenialType resolved() const;
  std::string to_string() const;

  bool operator==(const CongenialType&) const = default;
};

// "n,r,rho,u,t" (parentheses and ';' are tolerated).
CongenialType parse_congenial_type(const std::string& text);

// One block: its size and the 1-based position (i, j) of its bottom-right
// corner inside the parent matrix.
struct BlockPlacement {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t corner_row = 0;
  std::size_t corner_col = 0;

  std::size_t first_row() const { return corner_row - rows; }  // 0-based
  std::size_t first_col() const { return corner_col - cols; }  // 0-based
  bool operator==(const BlockPlacement&) const = default;
};

// A0 followed by B_1..B_n.  B_l's top row is glued onto the last row of
// the previous block.
struct LinkedBlockDecomposition {
  BlockPlacement head;
  std::vector<BlockPlacement> blocks;

  bool operator==(const LinkedBlockDecomposition&) const = default;
};

// The staircase layout every matrix of the given type must follow.
LinkedBlockDecomposition standard_decomposition(const CongenialType& ty);

// Sidecar text: '#' comments, then one "rows cols i j" line per block,
// head first.
LinkedBlockDecomposition read_decomposition(std::istream& in);
LinkedBlockDecomposition load_decomposition(const std::string& path);
void write_decomposition(std::ostream& out, const LinkedBlockDecomposition& d);
std::string format_decomposition(const LinkedBlockDecomposition& d);

struct Verdict {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {true, {}}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Checks the linked-block shape, zeros off the footprints, nonzero
// columns, high non-singularity of every B_l and condition (b) on A0.
// Throws InvalidArgument when D, decomp and ty disagree on dimensions.
Verdict verify_congenial(const IntMatrix& d, const LinkedBlockDecomposition& decomp, const CongenialType& ty);
Verdict verify_congenial(const IntMatrix& d, const CongenialType& ty);

// Largest k such that the first k columns of the head span a line.
int head_line_prefix(const IntMatrix& head);

long long delta(long long rho, long long w);
// Throws InvalidArgument on an inadmissible triple (negative entry, u > t,
// or rho = 0 with u >= 3).
long long delta_star(long long rho, long long u, long long t);
bool delta_star_admissible(long long rho, long long u, long long t);

struct DeltaStarViolation {
  int rho, u, t;
  int branch;  // 1: t < 3 rho, 2: t >= 3 rho
  long long lhs, rhs;
};

struct DeltaStarSweep {
  std::vector<DeltaStarViolation> violations;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

// For t < 3 rho:   max{d*(rho,u,t-1), d*(rho-1,u,t-1) - 1} <= d*(rho,u,t)
// for t >= 3 rho, u >= 2:
//                  max{d*(rho,u-2,t-2) + 1, d*(rho-1,1,t-u) + u - 3} <= d*(rho,u,t)
// Triples whose right-hand arguments are inadmissible are skipped.
DeltaStarSweep sweep_delta_star(int rho_max, int t_max);

enum class DeletionMove {
  DropLastColumn,             // (n,r;rho,u,t-1)
  DropPivotRowAndLastColumn,  // (n,r;rho-1,u,t-1)
  DropFirstTwoColumns,        // (n,r;rho,max{u-2,1},t-2)
  DropFirstRowAndLineColumns  // (n,r;rho-1,1,t-u)
};

const char* move_name(DeletionMove m);
std::vector<DeletionMove> all_deletion_moves();

// Type-level bookkeeping.  Throws InvalidArgument when inapplicable.
CongenialType apply_deletion_move(const CongenialType& ty, DeletionMove move);
bool deletion_move_applicable(const CongenialType& ty, DeletionMove move);

struct DeletionOutcome {
  bool realized = false;
  std::string reason;  // why the concrete move could not be carried out
  IntMatrix matrix;
  CongenialType type;
};

// Concrete counterpart on a verified matrix: row normalization within the
// head (never touching the row shared with B_1) followed by deletions.
DeletionOutcome realize_deletion_move(const IntMatrix& d, const CongenialType& ty, DeletionMove move);

// A matrix of type (n,r;1,u,u) read with the head and B_1 fused into one
// r-row head, i.e. as type (n-1,r;r,u,3r-3+u).  Needs rho = 1, n >= 1.
// The result verifies at the new type exactly when the lower r-1 rows of
// B_1 are themselves highly non-singular (true for generic entries).
std::pair<IntMatrix, CongenialType> merge_head_into_first_block(const IntMatrix& d, const CongenialType& ty);

}  // namespace diagcubic
