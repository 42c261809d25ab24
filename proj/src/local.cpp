#include "diagcubic/local.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/parallel.hpp"
#include "diagcubic/smooth.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace diagcubic {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}
i64 mulmod(i64 a, i64 b, i64 m) { return i64(i128(a) * b % m); }
i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = mod(b, m);
  for (; e; e >>= 1, b = mulmod(b, b, m))
    if (e & 1) r = mulmod(r, b, m);
  return r;
}
i64 cube_mod(i64 x, i64 m) { return mulmod(mulmod(x, x, m), x, m); }

i64 checked_pow(i64 p, int k) {
  i64 m = 1;
  for (int i = 0; i < k; ++i)
    if (__builtin_mul_overflow(m, p, &m)) throw ResourceGuardError("modulus overflows 64 bits");
  return m;
}

void check_prime(i64 p) {
  if (p < 2 || largest_prime_factor(p) != p) throw InvalidArgument("not a prime: " + std::to_string(p));
}

// Rank of a residue matrix mod prime p.
std::size_t rank_mod_p(std::vector<std::vector<i64>> a, i64 p) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && mod(a[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const i64 inv = powmod(a[rank][c], p - 2, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      const i64 f = mulmod(mod(a[i][c], p), inv, p);
      if (!f) continue;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = mod(a[i][j] - mulmod(f, mod(a[rank][j], p), p), p);
    }
    ++rank;
  }
  return rank;
}

bool nonsingular_at(const DiagonalCubicSystem& sys, i64 p, const std::vector<i64>& x) {
  std::vector<std::vector<i64>> jac(sys.r(), std::vector<i64>(sys.s()));
  for (std::size_t i = 0; i < sys.r(); ++i)
    for (std::size_t j = 0; j < sys.s(); ++j)
      jac[i][j] = mulmod(mulmod(3, mod(sys.coefficient(i, j), p), p), mulmod(x[j], x[j], p), p);
  return rank_mod_p(std::move(jac), p) == sys.r();
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    if (out.size() > 20000) break;
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Inverse of a square residue matrix mod p, or empty if singular.
std::vector<std::vector<i64>> inverse_mod_p(const std::vector<std::vector<i64>>& a, i64 p) {
  const std::size_t n = a.size();
  std::vector<std::vector<i64>> m(n, std::vector<i64>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mod(a[i][j], p);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return {};
    std::swap(m[piv], m[c]);
    const i64 inv = powmod(m[c][c], p - 2, p);
    for (auto& v : m[c]) v = mulmod(v, inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const i64 f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] = mod(m[i][j] - mulmod(f, m[c][j], p), p);
    }
  }
  std::vector<std::vector<i64>> inv(n, std::vector<i64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

int valuation(BigInt v, i64 p) {
  int k = 0;
  while (v != 0 && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

struct DpResult {
  bool found = false;
  bool over_budget = false;
  std::vector<i64> x;
};

// Is there x mod M = p^K with C x^3 = 0 mod M, x_j a unit for the flagged
// columns, and (if `primitive`) some x_j a unit?  Layered reachability over
// residue vectors, with backtracking for a witness.
DpResult dp_search(const DiagonalCubicSystem& sys, i64 p, int K, const std::vector<bool>& unit_required, bool primitive,
                   const LocalOptions& opts) {
  DpResult res;
  const std::size_t r = sys.r(), s = sys.s();
  const long double Ml = std::pow((long double)p, K);
  const long double Nl = std::pow(Ml, (long double)r);
  const std::size_t F = primitive ? 2 : 1;
  if (Nl * F > opts.max_states) {
    res.over_budget = true;
    return res;
  }
  const i64 M = checked_pow(p, K);
  const std::size_t N = std::size_t(Nl + 0.5L);
  std::vector<i64> rep_unit(M, -1), rep_non(M, -1), vals_unit, vals_non;
  for (i64 x = 0; x < M; ++x) {
    const i64 v = cube_mod(x, M);
    auto& rep = x % p ? rep_unit : rep_non;
    if (rep[v] < 0) {
      rep[v] = x;
      (x % p ? vals_unit : vals_non).push_back(v);
    }
  }
  long double work = 0;
  for (std::size_t j = 0; j < s; ++j) work += Nl * F * (vals_unit.size() + (unit_required[j] ? 0 : vals_non.size()));
  if (work > opts.max_work) {
    res.over_budget = true;
    return res;
  }
  std::vector<i64> radix(r);
  for (std::size_t i = 0; i < r; ++i) radix[i] = i ? radix[i - 1] * M : 1;
  std::vector<std::vector<i64>> coef(s, std::vector<i64>(r));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < r; ++i) coef[j][i] = mod(sys.coefficient(i, j), M);

  auto shifted = [&](std::size_t st, std::size_t j, i64 v, int sign) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < r; ++i) {
      const i64 d = i64(st / radix[i]) % M;
      const i64 step = mulmod(coef[j][i], v, M);
      out += std::size_t(mod(d + sign * step, M)) * radix[i];
    }
    return out;
  };

  std::vector<std::vector<std::uint8_t>> reach(s + 1, std::vector<std::uint8_t>(N * F, 0));
  reach[0][0] = 1;
  for (std::size_t j = 0; j < s; ++j) {
    const auto& cur = reach[j];
    auto& nxt = reach[j + 1];
    for (std::size_t st = 0; st < N; ++st)
      for (std::size_t f = 0; f < F; ++f) {
        if (!cur[st * F + f]) continue;
        for (i64 v : vals_unit) nxt[shifted(st, j, v, 1) * F + (F - 1)] = 1;
        if (!unit_required[j])
          for (i64 v : vals_non) nxt[shifted(st, j, v, 1) * F + f] = 1;
      }
  }
  std::size_t st = 0, flag = F - 1;
  if (!reach[s][st * F + flag]) return res;
  res.found = true;
  res.x.assign(s, 0);
  for (std::size_t j = s; j-- > 0;) {
    bool done = false;
    for (i64 v : vals_unit) {
      const std::size_t prev = shifted(st, j, v, -1);
      for (std::size_t f = 0; f < F && !done; ++f)
        if (reach[j][prev * F + f]) {
          res.x[j] = rep_unit[v];
          st = prev;
          flag = f;
          done = true;
        }
      if (done) break;
    }
    if (!done && !unit_required[j])
      for (i64 v : vals_non) {
        const std::size_t prev = shifted(st, j, v, -1);
        if (reach[j][prev * F + flag]) {
          res.x[j] = rep_non[v];
          st = prev;
          done = true;
          break;
        }
      }
    if (!done) throw ContractViolation("local search backtrack lost its path");
  }
  return res;
}

}  // namespace

const char* status_name(LocalStatus s) {
  switch (s) {
    case LocalStatus::Soluble: return "soluble";
    case LocalStatus::SolubleByTheorem: return "soluble-by-theorem";
    case LocalStatus::InsolubleUpTo: return "insoluble-up-to";
    case LocalStatus::Undetermined: return "undetermined";
  }
  return "?";
}

std::int64_t local_cutoff(std::size_t r) {
  if (r == 0 || r > 18) throw InvalidArgument("cutoff 9^(r+1) needs 1 <= r <= 18");
  return checked_pow(9, int(r) + 1);
}

std::optional<std::vector<std::int64_t>> nonsingular_solution_mod_p(const DiagonalCubicSystem& sys, std::int64_t p,
                                                                    std::uint64_t seed) {
  check_prime(p);
  if (p == 3) return std::nullopt;
  const std::size_t r = sys.r(), s = sys.s();
  auto residual_zero = [&](const std::vector<i64>& x) {
    for (std::size_t i = 0; i < r; ++i) {
      i64 acc = 0;
      for (std::size_t j = 0; j < s; ++j) acc = mod(acc + mulmod(mod(sys.coefficient(i, j), p), cube_mod(x[j], p), p), p);
      if (acc) return false;
    }
    return true;
  };
  if (std::pow((long double)p, (long double)s) <= 2e6L) {
    std::vector<i64> x(s, 0);
    while (true) {
      std::size_t j = 0;
      while (j < s && ++x[j] == p) x[j++] = 0;
      if (j == s) return std::nullopt;  // wrapped back to zero
      if (residual_zero(x) && nonsingular_at(sys, p, x)) return x;
    }
  }
  if (p > 10000000) return std::nullopt;
  std::vector<i64> root(p, -1);
  for (i64 x = p - 1; x >= 1; --x) root[cube_mod(x, p)] = x;
  std::mt19937_64 rng(seed ^ (std::uint64_t(p) * 0x9E3779B97F4A7C15ULL));
  std::uniform_int_distribution<i64> pick(0, p - 1);
  int bases = 0;
  for (const auto& T : subsets(s, r)) {
    std::vector<std::vector<i64>> ct(r, std::vector<i64>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) ct[i][k] = sys.coefficient(i, T[k]);
    const auto inv = inverse_mod_p(ct, p);
    if (inv.empty()) continue;
    std::vector<bool> in_t(s, false);
    for (auto t : T) in_t[t] = true;
    for (int trial = 0; trial < 20000; ++trial) {
      std::vector<i64> x(s, 0);
      for (std::size_t j = 0; j < s; ++j)
        if (!in_t[j]) x[j] = pick(rng);
      std::vector<i64> rhs(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j)
          if (!in_t[j]) rhs[i] = mod(rhs[i] - mulmod(mod(sys.coefficient(i, j), p), cube_mod(x[j], p), p), p);
      bool ok = true;
      for (std::size_t k = 0; k < r && ok; ++k) {
        i64 y = 0;
        for (std::size_t i = 0; i < r; ++i) y = mod(y + mulmod(inv[k][i], rhs[i], p), p);
        if (y == 0 || root[y] < 0) ok = false;
        else x[T[k]] = root[y];
      }
      if (ok && residual_zero(x) && nonsingular_at(sys, p, x)) return x;
    }
    if (++bases == 8) break;
  }
  return std::nullopt;
}

bool verify_witness(const DiagonalCubicSystem& sys, std::int64_t p, int k, const std::vector<std::int64_t>& x) {
  if (x.size() != sys.s() || k < 1) return false;
  const i64 M = checked_pow(p, k);
  bool unit = false;
  for (i64 v : x) unit = unit || mod(v, p) != 0;
  if (!unit) return false;
  for (std::size_t i = 0; i < sys.r(); ++i) {
    i64 acc = 0;
    for (std::size_t j = 0; j < sys.s(); ++j)
      acc = mod(acc + mulmod(mod(sys.coefficient(i, j), M), cube_mod(mod(x[j], M), M), M), M);
    if (acc) return false;
  }
  return true;
}

PrimeVerdict p_adic_soluble(const DiagonalCubicSystem& sys, std::int64_t p, const LocalOptions& opts) {
  check_prime(p);
  if (opts.depth < 1) throw InvalidArgument("search depth must be at least 1");
  PrimeVerdict v;
  v.p = p;
  if (p != 3)
    if (auto w = nonsingular_solution_mod_p(sys, p, opts.seed)) {
      v.status = LocalStatus::Soluble;
      v.k = 1;
      v.witness = *w;
      v.note = "nonsingular solution mod p";
      return v;
    }

  // Hensel: x_T units and C x^3 = 0 mod p^(2d+1), d = v_p(det of the
  // Jacobian on T) = v_p(det C_T) + r v_p(3).
  const std::size_t r = sys.r(), s = sys.s();
  std::vector<std::pair<int, std::vector<std::size_t>>> bases;
  for (const auto& T : subsets(s, r)) {
    const BigInt det = determinant(sys.matrix().select_columns(T));
    if (det == 0) continue;
    bases.push_back({valuation(det, p) + (p == 3 ? int(r) : 0), T});
  }
  std::stable_sort(bases.begin(), bases.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  bool over_budget = false;
  for (std::size_t b = 0; b < bases.size() && b < 3; ++b) {
    const auto& [d, T] = bases[b];
    std::vector<bool> unit(s, false);
    for (auto t : T) unit[t] = true;
    const DpResult res = dp_search(sys, p, 2 * d + 1, unit, false, opts);
    over_budget = over_budget || res.over_budget;
    if (res.found) {
      if (!verify_witness(sys, p, 2 * d + 1, res.x)) throw ContractViolation("Hensel witness failed re-verification");
      v.status = LocalStatus::Soluble;
      v.k = 2 * d + 1;
      v.witness = res.x;
      v.note = "lifts by Hensel (Jacobian minor valuation " + std::to_string(d) + ")";
      return v;
    }
  }

  // No primitive solution mod p^j rules out every deeper level, so go up
  // one level at a time.
  v.k = opts.depth;
  for (int j = 1; j <= opts.depth; ++j) {
    const DpResult prim = dp_search(sys, p, j, std::vector<bool>(s, false), true, opts);
    if (prim.over_budget) {
      v.note = "search budget exceeded at p^" + std::to_string(j);
      return v;
    }
    if (!prim.found) {
      v.status = LocalStatus::InsolubleUpTo;
      v.k = j;
      v.note = "no primitive solution mod p^" + std::to_string(j);
      return v;
    }
  }
  v.note = over_budget ? "lifting search over budget" : "solutions mod p^k exist but none passes the lifting test";
  return v;
}

RealSolution real_solution(const DiagonalCubicSystem& sys, std::uint64_t seed) {
  const std::size_t r = sys.r(), s = sys.s();
  Eigen::MatrixXd C(r, s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) C(long(i), long(j)) = double(sys.coefficient(i, j));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  RealSolution best;
  for (int restart = 0; restart < 200; ++restart) {
    Eigen::VectorXd x(s);
    for (std::size_t j = 0; j < s; ++j) x(long(j)) = gauss(rng);
    x.normalize();
    for (int it = 0; it < 100; ++it) {
      const Eigen::VectorXd F = C * x.array().cube().matrix();
      if (F.norm() < 1e-15) break;
      const Eigen::MatrixXd J = C * (3 * x.array().square()).matrix().asDiagonal();
      const Eigen::MatrixXd JJ = J * J.transpose();
      const Eigen::VectorXd step = J.transpose() * JJ.fullPivLu().solve(F);
      if (!step.allFinite()) break;
      x -= step;
      if (x.norm() == 0) break;
      x.normalize();
    }
    const double top = x.cwiseAbs().maxCoeff();
    if (!(top > 0)) continue;
    x /= top;
    std::size_t lead = 0;
    while (std::fabs(x(long(lead))) < 1 - 1e-12) ++lead;
    if (x(long(lead)) < 0) x = -x;
    for (std::size_t j = 0; j < s; ++j)
      if (std::fabs(std::fabs(x(long(j))) - 1) < 1e-12) x(long(j)) = x(long(j)) > 0 ? 1 : -1;
    const double res = (C * x.array().cube().matrix()).cwiseAbs().maxCoeff();
    if (res <= 1e-9) {
      best.found = true;
      best.point.assign(x.data(), x.data() + s);
      best.residual = res;
      return best;
    }
  }
  return best;
}

bool LocalReport::locally_soluble() const {
  if (!real.found || checked_bound < cutoff) return false;
  return std::all_of(primes.begin(), primes.end(), [](const PrimeVerdict& v) {
    return v.status == LocalStatus::Soluble || v.status == LocalStatus::SolubleByTheorem;
  });
}

std::vector<std::int64_t> LocalReport::obstructions() const {
  std::vector<std::int64_t> out;
  for (const auto& v : primes)
    if (v.status == LocalStatus::InsolubleUpTo) out.push_back(v.p);
  return out;
}

LocalReport local_check_all(const DiagonalCubicSystem& sys, const LocalOptions& opts) {
  LocalReport rep;
  rep.r = sys.r();
  rep.cutoff = local_cutoff(sys.r());
  rep.checked_bound = opts.prime_bound > 0 ? opts.prime_bound : rep.cutoff;
  const auto primes = primes_up_to(rep.checked_bound);
  // Beyond the cutoff the theorem covers every prime; no search.
  const std::size_t searched =
      std::size_t(std::upper_bound(primes.begin(), primes.end(), rep.cutoff) - primes.begin());
  if (searched > 0)
    rep.primes = map_chunks<PrimeVerdict>(searched, searched, opts.threads,
                                          [&](std::size_t b, std::size_t) { return p_adic_soluble(sys, primes[b], opts); });
  for (std::size_t k = searched; k < primes.size(); ++k) {
    PrimeVerdict v;
    v.p = primes[k];
    v.status = LocalStatus::SolubleByTheorem;
    v.note = "above the cutoff";
    rep.primes.push_back(v);
  }
  rep.real = real_solution(sys, opts.seed);
  return rep;
}

}  // namespace diagcubic
