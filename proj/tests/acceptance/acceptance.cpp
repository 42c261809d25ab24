// Acceptance suite.  One PASS/FAIL line per criterion; the exit status is
// nonzero when any selected criterion fails.

#include "diagcubic/complification.hpp"
#include "diagcubic/congenial.hpp"
#include "diagcubic/counting.hpp"
#include "diagcubic/local.hpp"
#include "diagcubic/matrix_io.hpp"
#include "diagcubic/predictor.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace diagcubic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string cli;
  std::string data;
  std::string scratch;
  unsigned threads = 0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

IntMatrix from_grid(const oracle::Grid& g) {
  std::vector<std::vector<BigInt>> rows;
  for (const auto& r : g) rows.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(rows);
}

std::string str(engine::Total v) { return engine::to_string(v); }

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

Outcome c1(const Context&) {
  const auto t0 = Clock::now();
  const auto sweep = sweep_delta_star(8, 30);
  const double secs = seconds_since(t0);
  return {sweep.violations.empty() && secs < 1.0,
          std::to_string(sweep.violations.size()) + " violations, " + std::to_string(sweep.checked) + " checked, " +
              std::to_string(sweep.skipped) + " skipped, " + fixed(secs, 4) + " s"};
}

Outcome c2(const Context&) {
  std::string values;
  bool ok = true;
  for (int r = 2; r <= 10; ++r) {
    const long long d = delta_star(r, 3, 3 * r);
    ok = ok && d == 2;
    values += (r > 2 ? "," : "") + std::to_string(d);
  }
  return {ok, "delta*(r,3,3r) for r=2..10: " + values};
}

Outcome c3(const Context&) {
  std::mt19937_64 rng(20240607);
  int instances = 0, failures = 0;
  std::string first_failure;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok && failures++ == 0) first_failure = what;
  };
  for (int k = 0; k < 100; ++k) {
    const std::size_t r = 2 + k % 2;
    const IntMatrix c = from_grid(oracle::random_hns(rng, r, 3 * r));
    ++instances;
    try {
      BicongenialMatrix b = build_B0(c);
      check(bool(verify_bicongenial(b.matrix(), 1, int(r))), "B0 instance " + std::to_string(k));
      for (int level = 0; level <= 3; ++level) {
        if (level > 0) {
          b = complify(b);
          check(b.n() == (1 << level) && verify_bicongenial(b.matrix(), 1 << level, int(r)),
                "complify instance " + std::to_string(k));
        }
        const auto d = build_terminal_D(b);
        const CongenialType want{(1 << level) - 1, int(r), int(r), 3, 3 * int(r)};
        check(d.type == want && verify_congenial(d.d, want), "terminal D instance " + std::to_string(k));
      }
    } catch (const std::exception& e) {
      check(false, std::string("instance ") + std::to_string(k) + ": " + e.what());
    }
  }
  return {failures == 0, std::to_string(instances) + " instances (r=2,3; k<=3), " + std::to_string(failures) +
                             " failures" + (first_failure.empty() ? "" : " (first: " + first_failure + ")")};
}

Outcome c4(const Context& ctx) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coef(-5, 5);
  int instances = 0, mismatches = 0;
  double largest = 0;
  auto random_matrix = [&](std::size_t r, std::size_t s) {
    oracle::Grid g(r, std::vector<oracle::i64>(s));
    for (std::size_t j = 0; j < s; ++j) {
      bool zero = true;
      while (zero) {
        for (std::size_t i = 0; i < r; ++i) g[i][j] = coef(rng);
        for (std::size_t i = 0; i < r; ++i) zero = zero && g[i][j] == 0;
      }
    }
    return g;
  };
  auto largest_P = [](std::size_t vars) {
    oracle::i64 P = 1;
    while (std::pow(2.0 * (P + 1) + 1, double(vars)) <= 1e7) ++P;
    return P;
  };
  CountOptions opts;
  opts.threads = ctx.threads;
  for (int k = 0; k < 60; ++k) {
    const int kind = k % 4;
    const std::size_t r = 1 + (k / 4) % 2;
    oracle::u128 want = 0;
    engine::Total got = 0;
    double space = 0;
    if (kind == 0) {  // N(P), all variables free
      const std::size_t s = 3 + k % 4;
      const auto c = random_matrix(r, s);
      const oracle::i64 P = std::min<oracle::i64>(largest_P(s), 2 + k % 5);
      space = std::pow(2.0 * P + 1, double(s));
      want = oracle::count_N(c, P);
      got = count_N(DiagonalCubicSystem(from_grid(c)), {P}, opts);
    } else if (kind == 1) {  // I(P; D)
      const std::size_t S = 2 + k % 2;
      const auto d = random_matrix(r, S);
      const oracle::i64 P = std::min<oracle::i64>(largest_P(2 * S), 1 + k % 4);
      space = std::pow(2.0 * P + 1, 2.0 * double(S));
      want = oracle::mean_value(d, P);
      got = count_mean_value(from_grid(d), P, opts);
    } else if (kind == 2) {  // K(P; C), r = 1
      const auto c = random_matrix(1, 3);
      const oracle::i64 P = 3 + k % 6, R = 2 + k % 2;
      space = std::pow(double(oracle::smooth_members(P, R).size()), 6.0);
      want = oracle::K(c, P, R);
      got = count_K(from_grid(c), P, R, opts);
    } else {  // N(P) with two smooth coordinates
      const std::size_t s = 4 + k % 2;
      const auto c = random_matrix(r, s);
      const oracle::i64 P = 4, R = 3;
      std::vector<std::vector<oracle::i64>> lists(s, oracle::cubes(P));
      std::vector<oracle::i64> sm;
      for (auto x : oracle::smooth_members(P, R)) sm.push_back(x * x * x);
      lists[0] = lists[2] = sm;
      space = 1;
      for (const auto& l : lists) space *= double(l.size());
      want = oracle::zero_sum_count(c, lists);
      CountSpec spec{P, {0, 2}, R, false};
      got = count_N(DiagonalCubicSystem(from_grid(c)), spec, opts);
    }
    if (space > 1e7) continue;
    ++instances;
    largest = std::max(largest, space);
    if (got != engine::Total(want)) ++mismatches;
  }
  return {instances >= 50 && mismatches == 0,
          std::to_string(instances) + " instances (largest search space " + fixed(largest, 0) + "), " +
              std::to_string(mismatches) + " mismatches"};
}

Outcome c5(const Context& ctx) {
  const IntMatrix c = load_matrix(ctx.data + "/C_2x6.txt");
  const auto step = complify_detailed(build_B0(c));
  const auto nb = step.normalized.to_int64();
  const auto star = step.doubled.matrix().to_int64();
  // T by full enumeration of the square-sum side
  const oracle::u128 t_brute = oracle::T(nb, 2, 2);
  // J(B*) by tabulating every tuple of the forward half
  oracle::Grid jc;
  std::vector<std::vector<oracle::i64>> lists;
  oracle::J_system(star, 2, 2, jc, lists);
  const oracle::u128 j_brute = oracle::zero_sum_count_split(jc, lists, lists.size() / 2);
  CountOptions opts;
  opts.threads = ctx.threads;
  const auto t_engine = count_T(step.normalized, 2, 2, opts);
  const auto j_engine = count_J(step.doubled, 2, 2, opts);
  const bool ok = t_brute == j_brute && t_engine == engine::Total(t_brute) && j_engine == engine::Total(j_brute);
  return {ok, "T(2;B) = " + str(engine::Total(t_brute)) + ", J(2;B*) = " + str(engine::Total(j_brute)) +
                  " (engine: " + str(t_engine) + ", " + str(j_engine) + ")"};
}

Outcome c6(const Context& ctx) {
  const auto t0 = Clock::now();
  const IntMatrix c = load_matrix(ctx.data + "/C_2x6.txt");
  const auto term = build_terminal_D(build_B0(c));
  if (!(term.type == CongenialType{0, 2, 2, 3, 6}) || !verify_congenial(term.d, term.type))
    return {false, "terminal matrix did not verify"};
  CountOptions opts;
  opts.threads = ctx.threads;
  std::vector<std::pair<std::int64_t, double>> pts;
  std::string counts;
  for (std::int64_t P : {4, 6, 8, 12, 16}) {
    const auto n = count_mean_value(term.d, P, opts);
    pts.push_back({P, double(n)});
    counts += (counts.empty() ? "" : ", ") + std::to_string(P) + ":" + str(n);
  }
  const auto fit = fit_exponent(pts);
  const double S = double(term.type.S());
  const double upper = S + double(delta_star(term.type.rho, term.type.u, term.type.t)) + 0.4;
  const double secs = seconds_since(t0);
  return {fit.slope >= S && fit.slope <= upper && secs < 300,
          "slope " + fixed(fit.slope, 4) + " in [" + fixed(S, 1) + ", " + fixed(upper, 1) + "]? counts " + counts +
              ", " + fixed(secs, 1) + " s"};
}

Outcome c7(const Context& ctx) {
  double worst = 0;
  std::int64_t worst_q = 0;
  for (std::int64_t q = 1; q <= 500; ++q) {
    const auto t = gauss_cubic_table(q);
    for (std::int64_t a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double ratio = std::abs(t[a]) / std::pow(double(q), 2.0 / 3);
      if (ratio > worst) worst = ratio, worst_q = q;
    }
  }
  const DiagonalCubicSystem sys(load_matrix(ctx.data + "/hasse_demo.txt"));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 2; pairs.size() < 20; ++a)
    for (int b = a + 1; b <= 25 && pairs.size() < 20; b += 3)
      if (std::gcd(a, b) == 1 && a * b <= 400) pairs.push_back({a, b});
  double max_dev = 0;
  for (auto [a, b] : pairs) max_dev = std::max(max_dev, std::fabs(A_q(sys, a * b) - A_q(sys, a) * A_q(sys, b)));
  const double a1 = A_q(sys, 1);
  return {worst <= 4.0 && max_dev <= 1e-8 && a1 == 1.0 && pairs.size() == 20,
          "max |S(q,a)|/q^(2/3) = " + fixed(worst, 4) + " (q=" + std::to_string(worst_q) +
              "), multiplicativity max deviation " + std::to_string(max_dev) + " over " +
              std::to_string(pairs.size()) + " pairs, A(1) = " + fixed(a1, 1)};
}

Outcome c8(const Context& ctx) {
  const auto t0 = Clock::now();
  const DiagonalCubicSystem sys(load_matrix(ctx.data + "/hasse_demo.txt"));
  LocalOptions lopts;
  lopts.threads = ctx.threads;
  const auto rep = local_check_all(sys, lopts);
  int soluble = 0;
  for (const auto& v : rep.primes)
    if (v.status == LocalStatus::Soluble && v.p <= 81) ++soluble;
  const bool local_ok = rep.checked_bound >= 81 && soluble == int(rep.primes.size()) && soluble == 22;

  PredictionOptions opts;
  opts.Q = 200;
  opts.X = 50;
  opts.tol = 1e-8;
  opts.threads = ctx.threads;
  opts.count.threads = ctx.threads;
  opts.run_local_check = false;
  const auto pred = predict_and_compare(sys, {20, 30, 40, 50}, opts);
  bool band = true;
  std::string ratios;
  for (const auto& row : pred.rows) {
    band = band && row.ratio >= 0.7 && row.ratio <= 1.3;
    ratios += (ratios.empty() ? "" : ", ") + std::to_string(row.P) + ":" + fixed(row.ratio, 4);
  }
  const auto& rows = pred.rows;
  const bool trend = rows.size() >= 2 && std::fabs(rows.back().ratio - 1) <= std::fabs(rows[rows.size() - 2].ratio - 1);
  const double secs = seconds_since(t0);
  return {local_ok && band && trend && secs < 600,
          "soluble at " + std::to_string(soluble) + "/22 primes <= 81; S(200) = " + fixed(pred.series.value, 8) +
              ", J(50) = " + fixed(pred.integral.value, 8) + "; ratios " + ratios + (band ? "" : " (outside [0.7,1.3])") +
              (trend ? "" : " (last step moves away from 1)") + ", " + fixed(secs, 1) + " s"};
}

Outcome c9(const Context& ctx) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> f(-3, 3);
  CountOptions opts;
  opts.threads = ctx.threads;
  int same = 0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t r = 2 + k % 2, S = r + 2;
    const IntMatrix d = from_grid(oracle::random_hns(rng, r, S, 5));
    IntMatrix e = d;
    std::uniform_int_distribution<std::size_t> row(0, r - 1);
    for (int op = 0; op < 5; ++op) {
      const std::size_t a = row(rng), b = row(rng);
      if (op % 3 == 0 && a != b) e.add_row_multiple(a, b, BigInt(f(rng)));
      else if (op % 3 == 1) e.swap_rows(a, b);
      else e.scale_row(a, BigInt(op % 2 ? -1 : 2));
    }
    const std::int64_t P = r == 2 ? 5 : 3;
    if (count_mean_value(d, P, opts) == count_mean_value(e, P, opts)) ++same;
  }
  return {same == 20, std::to_string(same) + "/20 instances unchanged"};
}

std::uint64_t fnv1a(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = bool(in);
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch; in.get(ch);) h = (h ^ std::uint8_t(ch)) * 1099511628211ULL;
  return h;
}

Outcome c10(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli binary given"};
  if (!std::filesystem::exists(ctx.cli)) return {false, "cli binary " + ctx.cli + " not found"};
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"meanvalue", "meanvalue --matrix " + ctx.data + "/C_2x6.txt --P-list 4,6,8,10 --seed 7"},
      {"count", "count --system " + ctx.data + "/hasse_demo.txt --P-list 10,20,30 --seed 7"},
      {"predict", "predict --system " + ctx.data + "/hasse_demo.txt --Q 40 --X 10 --P-list 10,15 --skip-local --seed 7"},
  };
  std::string detail;
  bool all = true;
  for (const auto& [name, args] : jobs) {
    std::uint64_t first = 0;
    bool job_ok = true;
    for (unsigned threads : {1u, 2u, 4u}) {
      for (int rep = 0; rep < (threads == 1 ? 2 : 1); ++rep) {
        const std::string csv = ctx.scratch + "/diagcubic_" + std::to_string(::getpid()) + "_" + name + "_" + std::to_string(threads) + "_" + std::to_string(rep) + ".csv";
        std::remove(csv.c_str());
        const std::string cmd = "\"" + ctx.cli + "\" " + args + " --threads " + std::to_string(threads) + " --csv " +
                                csv + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        bool read = false;
        const std::uint64_t h = fnv1a(csv, read);
        if (rc != 0 || !read) job_ok = false;
        if (threads == 1 && rep == 0) first = h;
        else if (h != first) job_ok = false;
      }
    }
    std::ostringstream hex;
    hex << std::hex << first;
    detail += (detail.empty() ? "" : "; ") + name + " " + (job_ok ? "hash " + hex.str() : std::string("MISMATCH"));
    all = all && job_ok;
  }
  return {all, detail + " (threads 1,1,2,4)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  Context ctx;
  ctx.data = DIAGCUBIC_DATA_DIR;
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 10));
  app.add_option("--cli", ctx.cli, "path to the diagcubic binary (criterion 10)");
  app.add_option("--data", ctx.data, "sample data directory")->capture_default_str();
  app.add_option("--scratch", ctx.scratch, "directory for temporary CSV files (default: data-independent temp)");
  app.add_option("--threads", ctx.threads, "worker threads (0 = all cores)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (ctx.scratch.empty()) ctx.scratch = std::filesystem::temp_directory_path().string();

  const std::vector<std::function<Outcome(const Context&)>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (selected.empty())
    for (int k = 1; k <= 10; ++k) selected.push_back(k);
  int failed = 0;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[k - 1](ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " c" << k << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
