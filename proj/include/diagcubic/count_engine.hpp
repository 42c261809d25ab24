#pragma once

// Counting zero sums  sum_k column_k * t_k = 0  (a vector identity in Z^rows)
// where each t_k ranges over a weighted multiset of integers.  Terms are
// reduced to primitive column directions, same-direction terms are
// pre-convolved while that stays small, and the rest is split into two
// halves that are joined on equal-and-opposite keys.  Vectors are packed
// into one signed 128-bit key by a balanced mixed radix, so distinct
// partial sums never collide.

#include <cstdint>
#include <string>
#include <vector>

namespace diagcubic::engine {

using Key = __int128;
using Total = unsigned __int128;

std::string to_string(Total v);

struct Distribution {
  std::vector<std::int64_t> values;    // strictly ascending
  std::vector<std::uint64_t> weights;  // positive, parallel to values

  std::size_t size() const noexcept { return values.size(); }
  Total total() const;
  std::int64_t max_abs() const;
};

Distribution distribution_of(std::vector<std::int64_t> samples);
Distribution negated(const Distribution& d);
Distribution scaled(const Distribution& d, std::int64_t g);
// Distribution of a + b; throws ResourceGuardError past `max_values`
// candidate pairs.
Distribution convolve(const Distribution& a, const Distribution& b, std::size_t max_pairs = std::size_t(1) << 28);

struct Term {
  std::vector<std::int64_t> column;
  Distribution dist;
};

struct Problem {
  std::size_t rows = 0;
  std::vector<Term> terms;
};

struct Limits {
  double max_half_records = 2e8;  // work of the cheaper half
  double max_table_entries = 4e7;
  double max_total_work = 6e10;
  std::size_t merge_values = std::size_t(1) << 20;
  std::size_t dense_span = std::size_t(1) << 24;
};

struct Plan {
  std::size_t rows = 0;
  std::vector<Term> terms;  // after reduction and merging
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  bool stream_last = false;  // right.back() is streamed, not tabulated
  Total zero_column_factor = 1;
  double left_entries = 0, right_entries = 0;
  double left_records = 0, right_records = 0;
  double join_work = 0, total_work = 0;
  double log10_raw_tuples = 0;

  std::string describe() const;
};

// Throws ResourceGuardError if no split fits the limits.
Plan make_plan(const Problem& problem, const Limits& limits = {});
Total execute(const Plan& plan, unsigned threads = 1, const Limits& limits = {});
Total count_zero_sums(const Problem& problem, const Limits& limits = {}, unsigned threads = 1);

}  // namespace diagcubic::engine
