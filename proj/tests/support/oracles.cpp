#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

__int128 leibniz_det(const Grid& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  __int128 total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    __int128 term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t j = start; j < n; ++j) {
    cur.push_back(j);
    subsets(n, k, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool highly_nonsingular(const Grid& m) {
  const std::size_t r = m.size(), s = m[0].size(), k = std::min(r, s);
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> cur;
  subsets(s, k, 0, cur, sets);
  for (const auto& cols : sets) {
    // Gram matrix of the chosen columns is nonsingular iff they are independent
    Grid g(k, std::vector<i64>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < r; ++i) g[a][b] += m[i][cols[a]] * m[i][cols[b]];
    if (leibniz_det(g) == 0) return false;
  }
  return true;
}

Grid random_hns(std::mt19937_64& rng, std::size_t r, std::size_t s, int bound) {
  std::uniform_int_distribution<int> pick(-bound, bound);
  while (true) {
    Grid m(r, std::vector<i64>(s));
    for (auto& row : m)
      for (auto& v : row) v = pick(rng);
    if (highly_nonsingular(m)) return m;
  }
}

std::vector<i64> cubes(i64 P) {
  std::vector<i64> v;
  for (i64 x = -P; x <= P; ++x) v.push_back(x * x * x);
  return v;
}

std::vector<i64> smooth_members(i64 P, i64 R) {
  std::vector<i64> out;
  for (i64 n = -P; n <= P; ++n) {
    if (n == 0) continue;
    i64 m = n < 0 ? -n : n;
    for (i64 d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        if (d > R) goto rough;
        m /= d;
      }
    if (m > R) continue;
    out.push_back(n);
  rough:;
  }
  return out;
}

namespace {

struct Walker {
  const Grid& c;
  const std::vector<std::vector<i64>>& lists;
  std::size_t check_rows;  // rows that must vanish
  std::vector<i64> acc;
  std::map<i64, u128>* profile = nullptr;
  u128 count = 0;

  void go(std::size_t j) {
    if (j == lists.size()) {
      for (std::size_t i = 0; i < check_rows; ++i)
        if (acc[i]) return;
      if (profile) ++(*profile)[acc.back()];
      else ++count;
      return;
    }
    for (i64 v : lists[j]) {
      for (std::size_t i = 0; i < c.size(); ++i) acc[i] += c[i][j] * v;
      go(j + 1);
      for (std::size_t i = 0; i < c.size(); ++i) acc[i] -= c[i][j] * v;
    }
  }
};

Grid negate_column_copy(const Grid& c, std::size_t j) {
  Grid out = c;
  for (auto& row : out) row.push_back(-row[j]);
  return out;
}

}  // namespace

u128 zero_sum_count(const Grid& c, const std::vector<std::vector<i64>>& lists) {
  Walker w{c, lists, c.size(), std::vector<i64>(c.size(), 0)};
  w.go(0);
  return w.count;
}

u128 zero_sum_count_split(const Grid& c, const std::vector<std::vector<i64>>& lists, std::size_t split) {
  const std::size_t rows = c.size();
  std::map<std::vector<i64>, u128> left;
  std::vector<i64> acc(rows, 0);
  u128 total = 0;
  auto walk = [&](auto&& self, std::size_t j, std::size_t end, bool tabulate) -> void {
    if (j == end) {
      if (tabulate) {
        ++left[acc];
      } else {
        std::vector<i64> want(rows);
        for (std::size_t i = 0; i < rows; ++i) want[i] = -acc[i];
        if (auto it = left.find(want); it != left.end()) total += it->second;
      }
      return;
    }
    for (i64 v : lists[j]) {
      for (std::size_t i = 0; i < rows; ++i) acc[i] += c[i][j] * v;
      self(self, j + 1, end, tabulate);
      for (std::size_t i = 0; i < rows; ++i) acc[i] -= c[i][j] * v;
    }
  };
  walk(walk, 0, split, true);
  walk(walk, split, lists.size(), false);
  return total;
}

std::map<i64, u128> last_row_profile(const Grid& c, const std::vector<std::vector<i64>>& lists) {
  std::map<i64, u128> prof;
  Walker w{c, lists, c.size() - 1, std::vector<i64>(c.size(), 0)};
  w.profile = &prof;
  w.go(0);
  return prof;
}

u128 count_N(const Grid& c, i64 P) {
  return zero_sum_count(c, std::vector<std::vector<i64>>(c[0].size(), cubes(P)));
}

u128 mean_value(const Grid& d, i64 P) {
  // variables x_1..x_S then y_1..y_S with columns d_j and -d_j
  Grid c = d;
  const std::size_t S = d[0].size();
  for (std::size_t j = 0; j < S; ++j) c = negate_column_copy(c, j);
  return zero_sum_count(c, std::vector<std::vector<i64>>(2 * S, cubes(P)));
}

u128 K(const Grid& cm, i64 P, i64 R) {
  Grid c = cm;
  const std::size_t s = cm[0].size();
  std::vector<std::vector<i64>> lists;
  for (std::size_t j = 0; j < s; ++j) lists.push_back(j < 3 ? [&] {
    std::vector<i64> v;
    for (i64 x : smooth_members(P, R)) v.push_back(x * x * x);
    return v;
  }() : cubes(P));
  for (std::size_t j = 0; j < s; ++j) {
    c = negate_column_copy(c, j);
    lists.push_back(lists[j]);
  }
  return zero_sum_count(c, lists);
}

namespace {

std::vector<i64> smooth_cubes(i64 P, i64 R) {
  std::vector<i64> v;
  for (i64 x : smooth_members(P, R)) v.push_back(x * x * x);
  return v;
}

}  // namespace

void J_system(const Grid& b, i64 P, i64 R, Grid& c, std::vector<std::vector<i64>>& lists) {
  const std::size_t cols = b[0].size(), last = cols - 1;
  c.assign(b.size(), {});
  lists.clear();
  auto add = [&](std::size_t j, i64 sign, const std::vector<i64>& vals) {
    for (std::size_t i = 0; i < b.size(); ++i) c[i].push_back(sign * b[i][j]);
    lists.push_back(vals);
  };
  const auto g = smooth_cubes(P, R), f = cubes(P);
  for (int k = 0; k < 3; ++k) add(0, 1, g);
  for (std::size_t j = 1; j < last; ++j) {
    add(j, 1, f);
    add(j, -1, f);
  }
  for (int k = 0; k < 3; ++k) add(last, -1, g);
}

u128 J(const Grid& b, i64 P, i64 R) {
  Grid c;
  std::vector<std::vector<i64>> lists;
  J_system(b, P, R, c, lists);
  return zero_sum_count(c, lists);
}

u128 T(const Grid& b, i64 P, i64 R) {
  const std::size_t last = b[0].size() - 1;
  Grid c(b.size());
  std::vector<std::vector<i64>> lists;
  auto add = [&](std::size_t j, i64 sign, const std::vector<i64>& vals) {
    for (std::size_t i = 0; i < b.size(); ++i) c[i].push_back(sign * b[i][j]);
    lists.push_back(vals);
  };
  const auto g = smooth_cubes(P, R), f = cubes(P);
  for (int k = 0; k < 3; ++k) add(0, 1, g);
  for (std::size_t j = 1; j < last; ++j) {
    add(j, 1, f);
    add(j, -1, f);
  }
  u128 total = 0;
  for (const auto& [m, n] : last_row_profile(c, lists)) total += n * n;
  return total;
}

double A_direct(const Grid& c, i64 q) {
  const std::size_t r = c.size(), s = c[0].size();
  const long double two_pi = 2 * std::acos(-1.0L);
  std::vector<i64> a(r, 0);
  std::complex<long double> total = 0;
  while (true) {
    std::size_t k = 0;
    while (k < r && ++a[k] == q) a[k++] = 0;
    if (k == r) break;
    i64 g = q;
    for (i64 v : a) g = std::gcd(g, v);
    if (g != 1) continue;
    std::complex<long double> prod = 1;
    for (std::size_t j = 0; j < s; ++j) {
      i64 gam = 0;
      for (std::size_t i = 0; i < r; ++i) gam += a[i] * c[i][j];
      std::complex<long double> S = 0;
      for (i64 x = 1; x <= q; ++x) {
        const long double ph = (long double)(((gam % q) * ((x * x * x) % q)) % q) / (long double)q;
        S += std::polar(1.0L, two_pi * ph);
      }
      prod *= S / (long double)q;
    }
    total += prod;
  }
  if (q == 1) return 1.0;
  return double(total.real());
}

}  // namespace oracle
