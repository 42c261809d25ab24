#include "diagcubic/counting.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/smooth.hpp"

#include <algorithm>
#include <set>

namespace diagcubic {

namespace {

void check_P(std::int64_t P) {
  if (P < 1 || P > kMaxCountP) throw InvalidArgument("box radius P must lie in [1, " + std::to_string(kMaxCountP) + "]");
}

std::vector<std::int64_t> column_of(const std::vector<std::vector<std::int64_t>>& m, std::size_t j) {
  std::vector<std::int64_t> c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

engine::Problem paired_problem(const IntMatrix& d, std::int64_t P, std::int64_t R, std::size_t smooth_prefix) {
  check_P(P);
  if (d.rows() == 0 || d.cols() == 0) throw InvalidArgument("empty matrix");
  const auto m = d.to_int64();
  const auto all = difference_distribution(cube_distribution(P));
  engine::Distribution smooth;
  if (smooth_prefix) smooth = difference_distribution(smooth_cube_distribution(P, R));
  engine::Problem prob;
  prob.rows = d.rows();
  for (std::size_t j = 0; j < d.cols(); ++j) prob.terms.push_back({column_of(m, j), j < smooth_prefix ? smooth : all});
  return prob;
}

}  // namespace

DiagonalCubicSystem::DiagonalCubicSystem(IntMatrix c) : c_(std::move(c)) {
  if (c_.rows() == 0 || c_.cols() == 0) throw InvalidArgument("system needs at least one equation and one variable");
  if (c_.has_zero_column()) throw InvalidArgument("system has a zero column (a variable that appears nowhere)");
  small_ = c_.to_int64();
}

std::vector<std::int64_t> DiagonalCubicSystem::column(std::size_t j) const { return column_of(small_, j); }

engine::Distribution cube_distribution(std::int64_t P) {
  check_P(P);
  std::vector<std::int64_t> v;
  for (std::int64_t x = -P; x <= P; ++x) v.push_back(x * x * x);
  return engine::distribution_of(std::move(v));
}

engine::Distribution smooth_cube_distribution(std::int64_t P, std::int64_t R) {
  check_P(P);
  const SmoothSet a = smooth_set(P, R);
  std::vector<std::int64_t> v;
  for (std::int64_t x : a.members) v.push_back(x * x * x);
  return engine::distribution_of(std::move(v));
}

engine::Distribution difference_distribution(const engine::Distribution& d) {
  return engine::convolve(d, engine::negated(d));
}

engine::Problem problem_N(const DiagonalCubicSystem& sys, const CountSpec& spec) {
  check_P(spec.P);
  std::set<std::size_t> smooth(spec.smooth_indices.begin(), spec.smooth_indices.end());
  if (!smooth.empty() && *smooth.rbegin() >= sys.s()) throw InvalidArgument("smooth index out of range");
  auto all = cube_distribution(spec.P);
  engine::Distribution sm;
  if (!smooth.empty()) sm = smooth_cube_distribution(spec.P, spec.R);
  if (spec.pairing) {
    all = difference_distribution(all);
    if (!smooth.empty()) sm = difference_distribution(sm);
  }
  engine::Problem prob;
  prob.rows = sys.r();
  for (std::size_t j = 0; j < sys.s(); ++j) prob.terms.push_back({sys.column(j), smooth.count(j) ? sm : all});
  return prob;
}

engine::Problem problem_mean_value(const IntMatrix& d, std::int64_t P) { return paired_problem(d, P, 0, 0); }

engine::Problem problem_K(const IntMatrix& c, std::int64_t P, std::int64_t R) {
  if (c.cols() != 3 * c.rows()) throw InvalidArgument("K(P;C) needs an r x 3r matrix");
  return paired_problem(c, P, R, 3);
}

engine::Problem problem_J(const IntMatrix& b, std::int64_t P, std::int64_t R) {
  check_P(P);
  if (b.rows() == 0 || b.cols() < 2) throw InvalidArgument("J(P;B) needs at least two columns");
  const auto m = b.to_int64();
  const auto pair = difference_distribution(cube_distribution(P));
  const auto g = smooth_cube_distribution(P, R);
  const auto g_neg = engine::negated(g);
  engine::Problem prob;
  prob.rows = b.rows();
  const std::size_t last = b.cols() - 1;
  for (int k = 0; k < 3; ++k) prob.terms.push_back({column_of(m, 0), g});
  for (std::size_t j = 1; j < last; ++j) prob.terms.push_back({column_of(m, j), pair});
  for (int k = 0; k < 3; ++k) prob.terms.push_back({column_of(m, last), g_neg});
  return prob;
}

engine::Problem problem_T(const IntMatrix& b, std::int64_t P, std::int64_t R) {
  check_P(P);
  if (b.rows() < 1 || b.cols() < 2) throw InvalidArgument("T(P;B) needs at least two columns");
  const auto m = b.to_int64();
  const std::size_t last_row = b.rows() - 1, lead = last_row, used = b.cols() - 1;
  const auto pair = difference_distribution(cube_distribution(P));
  const auto g = smooth_cube_distribution(P, R);
  // two copies: rows [0, lead) of copy one, rows [lead, 2 lead) of copy
  // two, then the difference of their last rows
  engine::Problem prob;
  prob.rows = 2 * lead + 1;
  for (int copy = 0; copy < 2; ++copy)
    for (std::size_t j = 0; j < used; ++j) {
      std::vector<std::int64_t> col(prob.rows, 0);
      for (std::size_t i = 0; i < lead; ++i) col[copy * lead + i] = m[i][j];
      col[2 * lead] = copy ? -m[last_row][j] : m[last_row][j];
      if (j == 0)
        for (int k = 0; k < 3; ++k) prob.terms.push_back({col, g});
      else
        prob.terms.push_back({col, pair});
    }
  return prob;
}

engine::Total count_T(const IntMatrix& b, std::int64_t P, std::int64_t R, const CountOptions& opts) {
  return engine::count_zero_sums(problem_T(b, P, R), opts.limits, opts.threads);
}

engine::Total count_N(const DiagonalCubicSystem& sys, const CountSpec& spec, const CountOptions& opts) {
  return engine::count_zero_sums(problem_N(sys, spec), opts.limits, opts.threads);
}

engine::Total count_mean_value(const IntMatrix& d, std::int64_t P, const CountOptions& opts) {
  return engine::count_zero_sums(problem_mean_value(d, P), opts.limits, opts.threads);
}

engine::Total count_K(const IntMatrix& c, std::int64_t P, std::int64_t R, const CountOptions& opts) {
  return engine::count_zero_sums(problem_K(c, P, R), opts.limits, opts.threads);
}

engine::Total count_J(const BicongenialMatrix& b, std::int64_t P, std::int64_t R, const CountOptions& opts) {
  return count_J(b.matrix(), P, R, opts);
}

engine::Total count_J(const IntMatrix& b, std::int64_t P, std::int64_t R, const CountOptions& opts) {
  return engine::count_zero_sums(problem_J(b, P, R), opts.limits, opts.threads);
}

}  // namespace diagcubic
