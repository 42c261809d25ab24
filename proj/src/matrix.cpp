#include "diagcubic/matrix.hpp"

#include "diagcubic/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace diagcubic {

namespace {

std::vector<std::size_t> normalized_index_set(const std::vector<std::size_t>& idx, std::size_t bound,
                                              const char* what) {
  std::vector<std::size_t> out(idx);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= bound) {
    throw InvalidArgument(std::string(what) + " index " + std::to_string(out.back()) +
                          " out of range (size " + std::to_string(bound) + ")");
  }
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& sorted_removed, std::size_t n) {
  std::vector<std::size_t> keep;
  keep.reserve(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < sorted_removed.size() && sorted_removed[k] == i) {
      ++k;
      continue;
    }
    keep.push_back(i);
  }
  return keep;
}

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order;
// stops early when fn returns false.  Returns false if stopped.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!fn(idx)) return false;
    if (k == 0) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

BigInt leibniz_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  BigInt total = 0;
  do {
    // parity by counting inversions; n is tiny here
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged initializer for IntMatrix");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InvalidArgument("ragged rows for IntMatrix");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

const BigInt& IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw InvalidArgument("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  return (*this)(i, j);
}

std::vector<BigInt> IntMatrix::column(std::size_t j) const {
  std::vector<BigInt> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

std::vector<BigInt> IntMatrix::row(std::size_t i) const {
  if (i >= rows_) throw InvalidArgument("row index out of range");
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

bool IntMatrix::column_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < rows_; ++i)
    if (at(i, j) != 0) return false;
  return true;
}

bool IntMatrix::has_zero_column() const {
  for (std::size_t j = 0; j < cols_; ++j)
    if (column_is_zero(j)) return true;
  return false;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix out(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) out(i, k) = (*this)(i, idx[k]);
  }
  return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix out(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= rows_) throw InvalidArgument("row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
  }
  return out;
}

IntMatrix IntMatrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw InvalidArgument("submatrix out of range");
  IntMatrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_int64() const {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const BigInt& v = (*this)(i, j);
      if (v < lo || v > hi) throw InvalidArgument("matrix entry does not fit in 64 bits");
      out[i][j] = static_cast<std::int64_t>(v);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a >= rows_ || b >= rows_) throw InvalidArgument("row index out of range");
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::scale_row(std::size_t i, const BigInt& factor) {
  if (i >= rows_) throw InvalidArgument("row index out of range");
  if (factor == 0) throw InvalidArgument("row scaling by zero is not invertible");
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= factor;
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor) {
  if (target >= rows_ || source >= rows_) throw InvalidArgument("row index out of range");
  if (target == source) throw InvalidArgument("adding a row to itself is not an elementary operation");
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

std::size_t rank_exact(const IntMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<BigInt> a(nr * nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) a[i * nc + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * nc + j]; };

  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t p = rank;
    while (p < nr && at(p, c) == 0) ++p;
    if (p == nr) continue;
    if (p != rank)
      for (std::size_t j = c; j < nc; ++j) std::swap(at(p, j), at(rank, j));
    for (std::size_t i = rank + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j) {
        at(i, j) = (at(rank, c) * at(i, j) - at(i, c) * at(rank, j)) / prev;
      }
      at(i, c) = 0;
    }
    prev = at(rank, c);
    ++rank;
  }
  return rank;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return negate ? BigInt(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

bool is_highly_nonsingular(const IntMatrix& m) {
  const std::size_t k = std::min(m.rows(), m.cols());
  if (m.has_zero_column()) return false;
  return for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
    return rank_exact(m.select_columns(cols)) == k;
  });
}

bool all_maximal_minors_nonzero(const IntMatrix& m) {
  if (m.cols() < m.rows()) throw InvalidArgument("maximal minors need at least as many columns as rows");
  return for_each_subset(m.cols(), m.rows(), [&](const std::vector<std::size_t>& cols) {
    return leibniz_determinant(m.select_columns(cols)) != 0;
  });
}

IntMatrix delete_columns(const IntMatrix& m, const std::vector<std::size_t>& idx) {
  return m.select_columns(complement(normalized_index_set(idx, m.cols(), "column"), m.cols()));
}

IntMatrix delete_rows(const IntMatrix& m, const std::vector<std::size_t>& idx) {
  return m.select_rows(complement(normalized_index_set(idx, m.rows(), "row"), m.rows()));
}

bool row_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  IntMatrix stacked(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      stacked(i, j) = a(i, j);
      stacked(a.rows() + i, j) = b(i, j);
    }
  const std::size_t ra = rank_exact(a);
  return ra == rank_exact(b) && ra == rank_exact(stacked);
}

IntMatrix row_normalize_pivot(const IntMatrix& m, const PivotSpec& spec) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::set<std::size_t> guarded(spec.protected_rows.begin(), spec.protected_rows.end());
  for (std::size_t g : guarded)
    if (g >= nr) throw InvalidArgument("protected row out of range");
  for (const auto& pv : spec.pivots) {
    if (pv.row >= nr || pv.column >= nc) throw InvalidArgument("pivot request out of range");
    if (guarded.count(pv.row)) throw InvalidArgument("a protected row cannot carry a pivot");
  }

  std::vector<Rational> a(nr * nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) a[i * nc + j] = Rational(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * nc + j]; };
  auto axpy = [&](std::size_t target, std::size_t source, const Rational& f) {
    for (std::size_t j = 0; j < nc; ++j)
      if (at(source, j) != 0) at(target, j) += f * at(source, j);
  };

  std::set<std::size_t> pivot_rows;
  for (const auto& pv : spec.pivots) {
    const std::size_t c = pv.column, i = pv.row;
    if (at(i, c) == 0) {
      // Borrow a row that is neither protected nor holding another
      // column's pivot; adding it keeps earlier pivot columns intact.
      std::size_t donor = nr;
      for (std::size_t k = 0; k < nr && donor == nr; ++k) {
        if (k == i || guarded.count(k) || pivot_rows.count(k)) continue;
        if (at(k, c) != 0) donor = k;
      }
      if (donor == nr) {
        throw UnachievablePattern("column " + std::to_string(c) + " cannot be supported on row " +
                                  std::to_string(i) + ": no usable row carries it");
      }
      axpy(i, donor, Rational(1));
    }
    pivot_rows.insert(i);
    for (std::size_t k = 0; k < nr; ++k) {
      if (k == i || at(k, c) == 0) continue;
      axpy(k, i, Rational(-at(k, c) / at(i, c)));
    }
  }

  for (const auto& pv : spec.pivots)
    for (std::size_t k = 0; k < nr; ++k)
      if (k != pv.row && at(k, pv.column) != 0) {
        throw UnachievablePattern("requested pivots conflict: column " + std::to_string(pv.column) +
                                  " is not confined to row " + std::to_string(pv.row));
      }

  IntMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    BigInt scale = 1;
    for (std::size_t j = 0; j < nc; ++j) scale = boost::multiprecision::lcm(scale, denominator(at(i, j)));
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = numerator(at(i, j)) * (scale / denominator(at(i, j)));
  }
  return out;
}

}  // namespace diagcubic
