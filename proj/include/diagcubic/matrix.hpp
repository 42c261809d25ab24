#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace diagcubic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense row-major matrix of arbitrary-precision integers.  Zero-sized
// matrices are allowed so that deletions can run all the way down.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Bounds-checked access; throws InvalidArgument.
  const BigInt& at(std::size_t i, std::size_t j) const;

  std::vector<BigInt> column(std::size_t j) const;
  std::vector<BigInt> row(std::size_t i) const;
  bool column_is_zero(std::size_t j) const;
  bool has_zero_column() const;

  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  IntMatrix transpose() const;

  // Entries as int64; throws InvalidArgument when something does not fit.
  std::vector<std::vector<std::int64_t>> to_int64() const;

  // Elementary row operations (in place).
  void swap_rows(std::size_t a, std::size_t b);
  void scale_row(std::size_t i, const BigInt& factor);  // factor != 0
  void add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor);

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_exact(const IntMatrix& m);

// Determinant of a square matrix, Bareiss.
BigInt determinant(const IntMatrix& m);

// Every set of min(rows, cols) columns is linearly independent.  Decided
// by exhaustive enumeration of column subsets.
bool is_highly_nonsingular(const IntMatrix& m);

// Second opinion for cols >= rows: every maximal minor is nonzero, each
// minor expanded over permutations.  Throws if cols < rows.
bool all_maximal_minors_nonzero(const IntMatrix& m);

IntMatrix delete_columns(const IntMatrix& m, const std::vector<std::size_t>& idx);
IntMatrix delete_rows(const IntMatrix& m, const std::vector<std::size_t>& idx);

// Same number of rows and the same row space over Q.
bool row_equivalent(const IntMatrix& a, const IntMatrix& b);

struct PivotRequest {
  std::size_t column;
  std::size_t row;
};

// Each listed column should end up supported on its row only.  Rows in
// `protected_rows` may still be modified but are never added into
// another row.
struct PivotSpec {
  std::vector<PivotRequest> pivots;
  std::vector<std::size_t> protected_rows;
};

// Rational Gauss-Jordan on the named columns followed by scaling each row
// by the least positive integer that clears its denominators.  Throws
// UnachievablePattern when the pattern cannot be produced.
IntMatrix row_normalize_pivot(const IntMatrix& m, const PivotSpec& spec);

}  // namespace diagcubic
