#include "commands.hpp"

#include "diagcubic/arcs.hpp"
#include "diagcubic/cli.hpp"
#include "diagcubic/complification.hpp"
#include "diagcubic/congenial.hpp"
#include "diagcubic/counting.hpp"
#include "diagcubic/errors.hpp"
#include "diagcubic/local.hpp"
#include "diagcubic/matrix_io.hpp"
#include "diagcubic/predictor.hpp"
#include "diagcubic/weyl.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace diagcubic::cli {

namespace {

std::string num(double v, int digits = 12) {
  std::ostringstream o;
  o << std::setprecision(digits) << v;
  return o.str();
}

std::string yes_no(const Streams& io, bool ok) {
  if (!io.color) return ok ? "yes" : "no";
  return ok ? "\033[32myes\033[0m" : "\033[31mno\033[0m";
}

std::pair<int, int> parse_nr(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';' || c == '(' || c == ')') c = ' ';
  std::istringstream in(t);
  int n = 0, r = 0;
  std::string rest;
  if (!(in >> n >> r) || (in >> rest)) throw InvalidArgument("expected a bicongenial type 'n,r', got '" + text + "'");
  if (n < 1 || r < 2) throw InvalidArgument("bicongenial type needs n >= 1 and r >= 2");
  return {n, r};
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt a(text.substr(0, slash)), b(text.substr(slash + 1));
    if (b == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    return Rational(a, b);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("expected a fraction a/b, got '" + text + "'");
  }
}

std::vector<std::int64_t> box_list(const RunConfig& cfg) {
  std::vector<std::int64_t> Ps = cfg.P_list;
  if (cfg.P > 0) Ps.insert(Ps.begin(), cfg.P);
  if (Ps.empty()) throw InvalidArgument("give --P or --P-list");
  for (std::size_t i = 0; i < Ps.size(); ++i) {
    if (Ps[i] < 1 || Ps[i] > kMaxCountP) throw InvalidArgument("box radius out of range: " + std::to_string(Ps[i]));
    if (i && Ps[i] <= Ps[i - 1]) throw InvalidArgument("box radii must be strictly increasing");
  }
  return Ps;
}

// CSV goes to the named file; "-" means stdout.
void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows,
               std::ostream& out) {
  if (path.empty()) return;
  std::ostringstream body;
  body << header << "\n";
  for (const auto& r : rows) body << r << "\n";
  if (path == "-") {
    out << body.str();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << body.str();
}

void emit_matrix(const RunConfig& cfg, const IntMatrix& m, Streams& io) {
  if (cfg.out_path.empty()) write_matrix(io.out, m);
  else save_matrix(cfg.out_path, m);
}

std::string dims(const IntMatrix& m) { return std::to_string(m.rows()) + " x " + std::to_string(m.cols()); }

void print_plan(std::ostream& os, const std::string& label, const engine::Problem& prob, const engine::Limits& limits) {
  os << label << "\n";
  try {
    os << engine::make_plan(prob, limits).describe();
  } catch (const ResourceGuardError& e) {
    os << "would be refused: " << e.what() << "\n";
    throw;
  }
}

}  // namespace

int cmd_classify(const RunConfig& cfg, Streams& io) {
  const IntMatrix m = load_matrix(cfg.matrix_path);
  io.out << "matrix: " << dims(m) << "\n";
  if (cfg.dry_run) {
    io.out << "dry run: matrix parsed; high non-singularity checks every column subset of size <= " << m.rows() << "\n";
    return kOk;
  }
  io.out << "rank: " << rank_exact(m) << "\n";
  io.out << "highly non-singular: " << yes_no(io, is_highly_nonsingular(m)) << "\n";
  int code = kOk;
  if (!cfg.type_text.empty()) {
    const CongenialType ty = parse_congenial_type(cfg.type_text);
    const Verdict v = cfg.decomposition_path.empty()
                          ? verify_congenial(m, ty)
                          : verify_congenial(m, load_decomposition(cfg.decomposition_path), ty);
    io.out << "congenial of type " << ty.to_string() << ": " << yes_no(io, v.ok) << "\n";
    if (!v.ok) {
      io.out << "  reason: " << v.reason << "\n";
      code = kVerificationFailure;
    } else if (!ty.is_formal()) {
      io.out << "  delta* = " << delta_star(ty.rho, ty.u, ty.t) << " (I(P;D) exponent bound S + delta* = "
             << ty.S() + delta_star(ty.rho, ty.u, ty.t) << ")\n";
    }
  }
  if (!cfg.bicongenial_text.empty()) {
    const auto [n, r] = parse_nr(cfg.bicongenial_text);
    const Verdict v = verify_bicongenial(m, n, r);
    io.out << "bicongenial of type (" << n << "," << r << "): " << yes_no(io, v.ok) << "\n";
    if (!v.ok) {
      io.out << "  reason: " << v.reason << "\n";
      code = kVerificationFailure;
    }
  }
  return code;
}

int cmd_lemma23(const RunConfig& cfg, Streams& io) {
  if (cfg.dry_run) {
    io.out << "dry run: would check rho <= " << cfg.rho_max << ", u <= t <= " << cfg.t_max << "\n";
    return kOk;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const DeltaStarSweep sweep = sweep_delta_star(cfg.rho_max, cfg.t_max);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  io.out << "delta* recursion sweep over rho <= " << cfg.rho_max << ", u <= t <= " << cfg.t_max << "\n";
  io.out << "checked " << sweep.checked << " triples, skipped " << sweep.skipped << " (inadmissible arguments)\n";
  for (std::size_t i = 0; i < sweep.violations.size() && i < 20; ++i) {
    const auto& v = sweep.violations[i];
    io.out << "  violation at (" << v.rho << "," << v.u << "," << v.t << ") branch " << v.branch << ": " << v.lhs
           << " > " << v.rhs << "\n";
  }
  io.out << sweep.violations.size() << " violations\n";
  io.out << "delta*(r,3,3r) for r = 2.." << std::max(2, cfg.rho_max) << ":";
  for (int r = 2; r <= std::max(2, cfg.rho_max); ++r) io.out << " " << delta_star(r, 3, 3 * r);
  io.out << "\n";
  io.out << "time: " << num(secs, 3) << " s\n";
  return sweep.violations.empty() ? kOk : kVerificationFailure;
}

int cmd_complify(const RunConfig& cfg, Streams& io) {
  const IntMatrix m = load_matrix(cfg.matrix_path);
  const auto [n, r] = parse_nr(cfg.type_text);
  if (cfg.dry_run) {
    const long long nn = static_cast<long long>(n) << cfg.iterations, R = nn * (r - 1);
    io.out << "dry run: input " << dims(m) << "; after " << cfg.iterations << " doubling(s) type (" << nn << "," << r
           << "), " << R + 1 << " x " << 3 * R + 2 << "\n";
    return kOk;
  }
  if (const Verdict v = verify_bicongenial(m, n, r); !v) {
    io.err << "input is not bicongenial of type (" << n << "," << r << "): " << v.reason << "\n";
    return kVerificationFailure;
  }
  BicongenialMatrix b = BicongenialMatrix::from_matrix(m, n, r);
  io.err << "input: type (" << n << "," << r << "), " << dims(m) << "\n";
  for (int k = 1; k <= cfg.iterations; ++k) {
    b = complify(b);
    const Verdict v = verify_bicongenial(b.matrix(), b.n(), b.r());
    io.err << "step " << k << ": type (" << b.n() << "," << b.r() << "), " << dims(b.matrix())
           << ", verified: " << (v.ok ? "yes" : "no") << "\n";
    if (!v) return kVerificationFailure;
  }
  emit_matrix(cfg, b.matrix(), io);
  return kOk;
}

int cmd_pipeline(const RunConfig& cfg, Streams& io) {
  const IntMatrix c = load_matrix(cfg.matrix_path);
  if (c.rows() < 2 || c.cols() != 3 * c.rows()) throw InvalidArgument("pipeline needs an r x 3r matrix with r >= 2");
  AnalyticConstants consts;
  consts.tau = parse_fraction(cfg.tau_text);
  consts.validate();
  const int l = cfg.l >= 0 ? cfg.l : choose_l(cfg.delta, consts);
  const int r = int(c.rows());
  auto& rep = io.err;
  rep << "tau = " << consts.tau << ", xi = " << consts.xi() << "\n";
  rep << "l = " << l << (cfg.l >= 0 ? " (given)" : " (smallest with 2^(1-l)(2-xi) < delta = " + num(cfg.delta) + ")")
      << ", 2^(1-l)(2-xi) = " << num(std::ldexp(double(Rational(2) - consts.xi()), 1 - l)) << "\n";
  if (cfg.dry_run) {
    const long long nn = 1LL << l, R = nn * (r - 1);
    rep << "dry run: terminal D of type (" << nn - 1 << "," << r << ";" << r << ",3," << 3 * r << "), " << R + 1
        << " x " << 3 * R + 3 << "\n";
    return kOk;
  }
  if (!is_highly_nonsingular(c)) {
    rep << "C is not highly non-singular\n";
    return kVerificationFailure;
  }
  BicongenialMatrix b = build_B0(c);
  rep << "B_0: type (1," << r << "), " << dims(b.matrix()) << ", verified: yes\n";
  for (int k = 1; k <= l; ++k) {
    b = complify(b);
    const Verdict v = verify_bicongenial(b.matrix(), b.n(), b.r());
    rep << "B_" << k << ": type (" << b.n() << "," << r << "), " << dims(b.matrix()) << ", verified: "
        << (v.ok ? "yes" : "no") << "\n";
    if (!v) return kVerificationFailure;
  }
  const TerminalMatrix d = build_terminal_D(b);
  const Verdict v = verify_congenial(d.d, d.type);
  rep << "D: type " << d.type.to_string() << ", " << dims(d.d) << ", verified: " << (v.ok ? "yes" : "no") << "\n";
  if (!v) return kVerificationFailure;
  rep << "delta*(" << r << ",3," << 3 * r << ") = " << delta_star(r, 3, 3 * r) << "\n";
  emit_matrix(cfg, d.d, io);
  return kOk;
}

int cmd_count(const RunConfig& cfg, Streams& io) {
  const DiagonalCubicSystem sys(load_matrix(cfg.system_path));
  const auto Ps = box_list(cfg);
  CountSpec spec;
  spec.pairing = cfg.pairing;
  for (auto i : cfg.smooth) {
    if (i < 1 || std::size_t(i) > sys.s()) throw InvalidArgument("--smooth index out of range (1-based)");
    spec.smooth_indices.push_back(std::size_t(i - 1));
  }
  if (!spec.smooth_indices.empty()) {
    if (cfg.R < 2) throw InvalidArgument("--smooth needs --R >= 2");
    if (cfg.R > Ps.front()) throw InvalidArgument("--R must not exceed P");
    spec.R = cfg.R;
  }
  CountOptions opts;
  opts.threads = cfg.threads;
  if (cfg.dry_run) {
    for (auto P : Ps) {
      spec.P = P;
      print_plan(io.out, "P = " + std::to_string(P), problem_N(sys, spec), opts.limits);
    }
    return kOk;
  }
  std::vector<std::string> rows;
  io.out << "P count\n";
  for (auto P : Ps) {
    spec.P = P;
    const std::string c = engine::to_string(count_N(sys, spec, opts));
    io.out << P << " " << c << "\n";
    rows.push_back(std::to_string(P) + "," + c);
  }
  write_csv(cfg.csv_path, "P,count", rows, io.out);
  return kOk;
}

int cmd_meanvalue(const RunConfig& cfg, Streams& io) {
  const IntMatrix d = load_matrix(cfg.matrix_path);
  const auto Ps = box_list(cfg);
  CountOptions opts;
  opts.threads = cfg.threads;
  if (cfg.dry_run) {
    for (auto P : Ps) print_plan(io.out, "P = " + std::to_string(P), problem_mean_value(d, P), opts.limits);
    return kOk;
  }
  std::vector<std::string> rows;
  std::vector<std::pair<std::int64_t, double>> pts;
  io.out << "P count\n";
  for (auto P : Ps) {
    const engine::Total c = count_mean_value(d, P, opts);
    io.out << P << " " << engine::to_string(c) << "\n";
    rows.push_back(std::to_string(P) + "," + engine::to_string(c));
    pts.push_back({P, double(c)});
  }
  write_csv(cfg.csv_path, "P,count", rows, io.out);
  if (cfg.fit) {
    const ExponentFit f = fit_exponent(pts);
    const ExponentFit box = fit_exponent(pts, FitAbscissa::LogBox);
    io.out << "fitted exponent (log P): " << num(f.slope, 6) << " (intercept " << num(f.intercept, 6)
           << ", max residual " << num(f.max_residual, 3) << ", " << f.points.size() << " points)\n";
    io.out << "fitted exponent (log(2P+1)): " << num(box.slope, 6) << "\n";
    io.out << "diagonal lower bound exponent S = " << d.cols() << "\n";
  }
  return kOk;
}

int cmd_local(const RunConfig& cfg, Streams& io) {
  const DiagonalCubicSystem sys(load_matrix(cfg.system_path));
  LocalOptions opts;
  opts.depth = cfg.depth;
  opts.prime_bound = cfg.prime_bound;
  opts.threads = cfg.threads;
  opts.seed = cfg.seed;
  const std::int64_t cutoff = local_cutoff(sys.r());
  const std::int64_t bound = cfg.prime_bound > 0 ? cfg.prime_bound : cutoff;
  if (cfg.dry_run) {
    io.out << "dry run: " << primes_up_to(bound).size() << " primes up to " << bound << " (cutoff " << cutoff
           << "), depth " << cfg.depth << "\n";
    return kOk;
  }
  const LocalReport rep = local_check_all(sys, opts);
  io.out << "system: " << sys.r() << " equation(s) in " << sys.s() << " variables\n";
  io.out << "highly non-singular: " << yes_no(io, is_highly_nonsingular(sys.matrix())) << "\n";
  io.out << "primes checked: p <= " << rep.checked_bound << "; primes above " << rep.cutoff
         << " are soluble by theorem\n";
  std::size_t soluble = 0;
  for (const auto& v : rep.primes) {
    if (v.status == LocalStatus::Soluble) {
      ++soluble;
      continue;
    }
    io.out << "  p = " << v.p << ": " << status_name(v.status);
    if (v.status == LocalStatus::InsolubleUpTo) io.out << " (k = " << v.k << ")";
    io.out << ", " << v.note << "\n";
  }
  io.out << "soluble at " << soluble << " of " << rep.primes.size() << " checked primes\n";
  if (rep.checked_bound < rep.cutoff) io.out << "primes in (" << rep.checked_bound << ", " << rep.cutoff << "] not checked\n";
  io.out << "real solution: ";
  if (rep.real.found) {
    io.out << "(";
    for (std::size_t j = 0; j < rep.real.point.size(); ++j) io.out << (j ? ", " : "") << num(rep.real.point[j], 10);
    io.out << "), residual " << num(rep.real.residual, 3) << "\n";
  } else {
    io.out << "undetermined (no witness found)\n";
  }
  io.out << "locally soluble: " << yes_no(io, rep.locally_soluble()) << "\n";
  if (cfg.key_value) {
    for (const auto& v : rep.primes) {
      io.out << "p=" << v.p << " status=" << status_name(v.status) << " k=" << v.k;
      if (!v.witness.empty()) {
        io.out << " witness=";
        for (std::size_t j = 0; j < v.witness.size(); ++j) io.out << (j ? "," : "") << v.witness[j];
      }
      io.out << "\n";
    }
    io.out << "real=" << (rep.real.found ? "found" : "undetermined") << "\n";
  }
  return kOk;
}

int cmd_predict(const RunConfig& cfg, Streams& io) {
  const DiagonalCubicSystem sys(load_matrix(cfg.system_path));
  const auto Ps = box_list(cfg);
  PredictionOptions opts;
  opts.Q = cfg.Q;
  opts.X = cfg.X;
  opts.tol = cfg.tol;
  opts.threads = cfg.threads;
  opts.enforce_hypotheses = !cfg.no_enforce;
  opts.run_local_check = !cfg.skip_local;
  opts.count.threads = cfg.threads;
  opts.local.threads = cfg.threads;
  opts.local.seed = cfg.seed;
  const std::size_t r = sys.r(), s = sys.s();
  if (cfg.dry_run) {
    io.out << "s > 6r: " << (s > 6 * r ? "yes" : "no") << "\n";
    io.out << "singular series: sum over q <= " << cfg.Q << " of q^" << r << " residue tuples\n";
    for (auto P : Ps) print_plan(io.out, "P = " + std::to_string(P), problem_N(sys, CountSpec{P, {}, 0, false}), opts.count.limits);
    return kOk;
  }
  const PredictionReport rep = predict_and_compare(sys, Ps, opts);
  io.out << "hypotheses\n";
  io.out << "  s > 6r: " << yes_no(io, rep.s_gt_6r) << " (s = " << s << ", r = " << r << ")\n";
  io.out << "  highly non-singular: " << yes_no(io, rep.highly_nonsingular) << "\n";
  if (rep.local_checked) {
    io.out << "  locally soluble: " << yes_no(io, rep.local.locally_soluble());
    const auto obs = rep.local.obstructions();
    if (!obs.empty()) {
      io.out << " (obstruction at p =";
      for (auto p : obs) io.out << " " << p;
      io.out << ")";
    }
    io.out << "\n";
  }
  io.out << "singular series S(" << rep.series.Q << ") = " << num(rep.series.value) << " (tail bound "
         << num(rep.series.tail_bound, 4) << " from c_fit = " << num(rep.series.c_fit, 4) << ", eps = "
         << num(rep.series.epsilon, 4) << ")\n";
  io.out << "singular integral J(" << num(rep.integral.X) << ") = " << num(rep.integral.value) << " +- "
         << num(rep.integral.error, 3) << "\n";
  io.out << "P N(P) predicted ratio\n";
  std::vector<std::string> rows;
  for (const auto& row : rep.rows) {
    const std::string line = std::to_string(row.P) + "," + engine::to_string(row.count) + "," + num(row.predicted) +
                             "," + num(row.ratio, 10);
    io.out << row.P << " " << engine::to_string(row.count) << " " << num(row.predicted) << " " << num(row.ratio, 6)
           << "\n";
    rows.push_back(line);
  }
  write_csv(cfg.csv_path, "P,count,predicted,ratio", rows, io.out);
  return kOk;
}

int cmd_compare(const RunConfig& cfg, Streams& io) {
  const IntMatrix m = load_matrix(cfg.matrix_path);
  const auto [n, r] = parse_nr(cfg.type_text);
  if (cfg.R < 2 || cfg.R > cfg.P) throw InvalidArgument("--R must satisfy 2 <= R <= P");
  if (const Verdict v = verify_bicongenial(m, n, r); !v) {
    io.err << "input is not bicongenial of type (" << n << "," << r << "): " << v.reason << "\n";
    return kVerificationFailure;
  }
  const Complification cx = complify_detailed(BicongenialMatrix::from_matrix(m, n, r));
  CountOptions opts;
  opts.threads = cfg.threads;
  if (cfg.dry_run) {
    print_plan(io.out, "T(P;B)", problem_T(cx.normalized, cfg.P, cfg.R), opts.limits);
    print_plan(io.out, "J(P;B*)", problem_J(cx.doubled.matrix(), cfg.P, cfg.R), opts.limits);
    return kOk;
  }
  const engine::Total t = count_T(cx.normalized, cfg.P, cfg.R, opts);
  const engine::Total j = count_J(cx.doubled, cfg.P, cfg.R, opts);
  io.out << "B* type (" << cx.doubled.n() << "," << r << "), " << dims(cx.doubled.matrix()) << "\n";
  io.out << "T(P;B)  = " << engine::to_string(t) << "\n";
  io.out << "J(P;B*) = " << engine::to_string(j) << "\n";
  io.out << "equal: " << yes_no(io, t == j) << "\n";
  return t == j ? kOk : kVerificationFailure;
}

int cmd_expsum(const RunConfig& cfg, Streams& io) {
  RationalAlpha exact;
  double alpha = 0;
  const bool rational = parse_alpha(cfg.alpha_text, exact, alpha);
  ArcParameters params{double(cfg.P), cfg.L, cfg.r_arcs};
  params.validate();
  std::optional<SmoothSet> smooth;
  if (cfg.R) {
    if (cfg.R < 2 || cfg.R > cfg.P) throw InvalidArgument("--R must satisfy 2 <= R <= P");
  }
  if (cfg.dry_run) {
    io.out << "dry run: " << 2 * cfg.P + 1 << " terms" << (cfg.R ? " plus the smooth sum" : "") << "\n";
    return kOk;
  }
  const auto f = rational ? f_eval(exact, cfg.P) : f_eval(alpha, cfg.P);
  io.out << "alpha = " << (rational ? std::to_string(exact.a) + "/" + std::to_string(exact.q) : num(alpha, 17))
         << (rational ? " (exact phases)" : "") << "\n";
  io.out << "f = " << num(f.real()) << " + " << num(f.imag()) << "i, |f| = " << num(std::abs(f)) << ", |f|/(2P+1) = "
         << num(std::abs(f) / double(2 * cfg.P + 1), 6) << "\n";
  if (cfg.R) {
    smooth = smooth_set(cfg.P, cfg.R);
    const auto g = rational ? g_eval(exact, *smooth) : g_eval(alpha, *smooth);
    io.out << "g = " << num(g.real()) << " + " << num(g.imag()) << "i, |g| = " << num(std::abs(g)) << ", #A(P,R) = "
           << smooth->size() << "\n";
  }
  const double a01 = alpha - std::floor(alpha);
  if (const auto m = classify_arc(a01, params)) io.out << "major arc M(" << m->q << "," << m->a << ")\n";
  else io.out << "minor arc\n";
  if (const auto m = narrow_arc(a01, params)) io.out << "in N(" << m->q << "," << m->a << ")\n";
  else io.out << "not in N\n";
  if (cfg.r_arcs == 1) {
    if (const auto m = box_match({a01}, params)) io.out << "in P(" << m->q << ", " << m->a[0] << ") with Q = " << num(params.Q()) << "\n";
    else io.out << "not in P (Q = " << num(params.Q()) << ")\n";
  }
  return kOk;
}

}  // namespace diagcubic::cli
