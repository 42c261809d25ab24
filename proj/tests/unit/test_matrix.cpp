#include "diagcubic/errors.hpp"
#include "diagcubic/matrix.hpp"
#include "diagcubic/matrix_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace diagcubic;

namespace {

IntMatrix from_grid(const oracle::Grid& g) {
  std::vector<std::vector<BigInt>> rows;
  for (const auto& r : g) rows.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(rows);
}

oracle::Grid to_grid(const IntMatrix& m) { return m.to_int64(); }

}  // namespace

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank_exact(IntMatrix::identity(3)), 3u);
  EXPECT_EQ(rank_exact(IntMatrix(2, 2)), 0u);
  EXPECT_EQ(rank_exact(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Determinant, MatchesLeibnizOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    oracle::Grid g(n, std::vector<oracle::i64>(n));
    for (auto& row : g)
      for (auto& v : row) v = pick(rng);
    EXPECT_EQ(determinant(from_grid(g)), BigInt(static_cast<long long>(oracle::leibniz_det(g))));
  }
}

TEST(HighlyNonsingular, Examples) {
  EXPECT_TRUE(is_highly_nonsingular(IntMatrix::identity(4)));
  EXPECT_TRUE(is_highly_nonsingular(IntMatrix{{1, 0, 1, 1}, {0, 1, 1, 2}}));
  EXPECT_FALSE(is_highly_nonsingular(IntMatrix{{1, 0, 1}, {0, 0, 1}}));
  EXPECT_FALSE(is_highly_nonsingular(IntMatrix{{1, 0, 2}, {2, 0, 1}}));  // zero column
  EXPECT_FALSE(is_highly_nonsingular(IntMatrix{{1, 2, 3}, {2, 4, 1}}));  // first two columns parallel
}

TEST(HighlyNonsingular, AgreesWithGramOracleAndMinors) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pick(-2, 2);
  int positives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = 1 + trial % 3, s = 1 + (trial / 3) % 6;
    oracle::Grid g(r, std::vector<oracle::i64>(s));
    for (auto& row : g)
      for (auto& v : row) v = pick(rng);
    const IntMatrix m = from_grid(g);
    const bool hns = is_highly_nonsingular(m);
    EXPECT_EQ(hns, oracle::highly_nonsingular(g)) << format_matrix(m);
    if (s >= r) EXPECT_EQ(hns, all_maximal_minors_nonzero(m)) << format_matrix(m);
    positives += hns;
  }
  EXPECT_GT(positives, 50);
}

TEST(Delete, ColumnsAndRows) {
  const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(delete_columns(m, {0}), (IntMatrix{{2, 3}, {5, 6}}));
  EXPECT_EQ(delete_rows(delete_columns(IntMatrix::identity(2), {0}), {0}), (IntMatrix{{1}}));
  EXPECT_THROW(delete_columns(m, {3}), InvalidArgument);
  EXPECT_THROW(delete_rows(m, {2}), InvalidArgument);
}

TEST(Delete, HighNonSingularitySurvivesColumnDeletion) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + trial % 2, s = r + 1 + trial % 4;
    const IntMatrix m = from_grid(oracle::random_hns(rng, r, s));
    for (std::size_t j = 0; j < s; ++j) EXPECT_TRUE(is_highly_nonsingular(delete_columns(m, {j})));
  }
}

TEST(Delete, UnitColumnWithItsRow) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> pick(1, 5);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + trial % 2, s = r + 2;
    oracle::Grid g = oracle::random_hns(rng, r, s);
    const std::size_t row = trial % r;
    for (std::size_t i = 0; i < r; ++i) g[i].push_back(i == row ? pick(rng) : 0);
    if (!oracle::highly_nonsingular(g)) continue;
    const IntMatrix m = from_grid(g);
    ASSERT_TRUE(is_highly_nonsingular(m));
    EXPECT_TRUE(is_highly_nonsingular(delete_rows(delete_columns(m, {s}), {row})));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(RowNormalize, ConfinesColumnToRow) {
  // second column confined to the second row
  EXPECT_EQ(row_normalize_pivot(IntMatrix{{1, 1}, {1, 2}}, {{{1, 1}}, {}}), (IntMatrix{{1, 0}, {1, 2}}));
  // first column confined to the first row: row2 - row1
  EXPECT_EQ(row_normalize_pivot(IntMatrix{{1, 1}, {1, 2}}, {{{0, 0}}, {}}), (IntMatrix{{1, 1}, {0, 1}}));
  const IntMatrix out = row_normalize_pivot(IntMatrix{{2, 1}, {3, 1}}, {{{0, 0}}, {}});
  EXPECT_EQ(out, (IntMatrix{{2, 1}, {0, -1}}));
  EXPECT_TRUE(row_equivalent(out, IntMatrix{{2, 1}, {3, 1}}));
}

TEST(RowNormalize, AlreadyNormalizedIsUnchanged) {
  const IntMatrix m{{3, 1, 4}, {0, 5, 9}};
  EXPECT_EQ(row_normalize_pivot(m, {{{0, 0}}, {}}), m);
}

TEST(RowNormalize, UnachievablePatternsAreReported) {
  // column 0 lives only on the protected row 1
  EXPECT_THROW(row_normalize_pivot(IntMatrix{{0, 1}, {1, 1}}, {{{0, 0}}, {1}}), UnachievablePattern);
  // two pivots demanding the same rank-one direction on different rows
  EXPECT_THROW(row_normalize_pivot(IntMatrix{{1, 2}, {1, 2}}, {{{0, 0}, {1, 1}}, {}}), UnachievablePattern);
  EXPECT_THROW(row_normalize_pivot(IntMatrix{{1, 2}, {1, 2}}, {{{0, 0}}, {0}}), InvalidArgument);
}

TEST(RowNormalize, PropertyRankAndRowSpaceKept) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> pick(-6, 6);
  int done = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 2 + trial % 3, s = r + trial % 3;
    oracle::Grid g(r, std::vector<oracle::i64>(s));
    for (auto& row : g)
      for (auto& v : row) v = pick(rng);
    const IntMatrix m = from_grid(g);
    PivotSpec spec;
    spec.pivots.push_back({std::size_t(trial) % s, std::size_t(trial / 7) % r});
    try {
      const IntMatrix out = row_normalize_pivot(m, spec);
      EXPECT_EQ(rank_exact(out), rank_exact(m));
      EXPECT_TRUE(row_equivalent(out, m));
      for (std::size_t i = 0; i < r; ++i)
        if (i != spec.pivots[0].row) EXPECT_EQ(out(i, spec.pivots[0].column), 0);
      ++done;
    } catch (const UnachievablePattern&) {
      EXPECT_TRUE(m.column_is_zero(spec.pivots[0].column));
    }
  }
  EXPECT_GT(done, 250);
}

TEST(MatrixIo, RoundTripIsByteExact) {
  const std::string text = "# a comment\n\n2 3\n  1 -2 3\n# inner\n40  5 -600\n";
  const IntMatrix m = parse_matrix(text);
  EXPECT_EQ(m, (IntMatrix{{1, -2, 3}, {40, 5, -600}}));
  const std::string canon = format_matrix(m);
  EXPECT_EQ(canon, "2 3\n1 -2 3\n40 5 -600\n");
  EXPECT_EQ(format_matrix(parse_matrix(canon)), canon);
}

TEST(MatrixIo, BigEntriesSurvive) {
  IntMatrix m(1, 2);
  m(0, 0) = BigInt("123456789012345678901234567890");
  m(0, 1) = -m(0, 0);
  EXPECT_EQ(parse_matrix(format_matrix(m)), m);
  EXPECT_THROW(m.to_int64(), InvalidArgument);
}

TEST(MatrixIo, MalformedInputIsRejected) {
  EXPECT_THROW(parse_matrix("2 2\n1 2\n3\n"), InvalidArgument);
  EXPECT_THROW(parse_matrix("1 2\n1 x\n"), InvalidArgument);
  EXPECT_THROW(parse_matrix(""), InvalidArgument);
  EXPECT_THROW(parse_matrix("1 1\n1\n2\n"), InvalidArgument);
}
