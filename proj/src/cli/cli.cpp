#include "diagcubic/cli.hpp"

#include "commands.hpp"
#include "diagcubic/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <unistd.h>

namespace diagcubic::cli {

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
  sub->add_flag("--dry-run", cfg.dry_run, "validate inputs and print the resource estimate only");
  sub->add_option("--seed", cfg.seed, "seed for randomized searches")->capture_default_str();
}

bool want_color(const std::ostream& out) {
  if (std::getenv("NO_COLOR")) return false;
  return &out == &std::cout && isatty(STDOUT_FILENO);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"diagcubic: diagonal cubic systems, congenial matrices, exact counts and the circle-method main term"};
  app.name("diagcubic");
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "high non-singularity and congenial/bicongenial verification");
  classify->add_option("--matrix", cfg.matrix_path, "matrix file")->required()->check(CLI::ExistingFile);
  classify->add_option("--type", cfg.type_text, "congenial type n,r,rho,u,t to verify");
  classify->add_option("--decomposition", cfg.decomposition_path, "block decomposition sidecar (default: standard)")
      ->check(CLI::ExistingFile);
  classify->add_option("--bicongenial", cfg.bicongenial_text, "bicongenial type n,r to verify");

  auto* lemma23 = app.add_subcommand("lemma23", "sweep the delta* recursion inequalities");
  lemma23->add_option("--rho-max", cfg.rho_max, "largest rho")->capture_default_str()->check(CLI::Range(0, 200));
  lemma23->add_option("--t-max", cfg.t_max, "largest t")->capture_default_str()->check(CLI::Range(0, 2000));

  auto* complify = app.add_subcommand("complify", "doubling step on a bicongenial matrix");
  complify->add_option("--matrix", cfg.matrix_path, "bicongenial matrix file")->required()->check(CLI::ExistingFile);
  complify->add_option("--type", cfg.type_text, "bicongenial type n,r")->required();
  complify->add_option("--iterations", cfg.iterations, "number of doublings")->capture_default_str()->check(CLI::Range(1, 12));
  complify->add_option("--out", cfg.out_path, "write the result here instead of stdout");

  auto* pipeline = app.add_subcommand("pipeline", "C -> B_0 -> l doublings -> terminal D");
  pipeline->add_option("--matrix", cfg.matrix_path, "r x 3r coefficient matrix")->required()->check(CLI::ExistingFile);
  pipeline->add_option("--delta", cfg.delta, "target exponent gap (picks l)")->capture_default_str();
  pipeline->add_option("--l", cfg.l, "number of doublings (overrides --delta)")->check(CLI::Range(0, 12));
  pipeline->add_option("--tau", cfg.tau_text, "tau as a fraction")->capture_default_str();
  pipeline->add_option("--out", cfg.out_path, "write D here instead of stdout");

  auto* count = app.add_subcommand("count", "exact solution count N(P)");
  count->add_option("--system", cfg.system_path, "coefficient matrix file")->required()->check(CLI::ExistingFile);
  count->add_option("--P", cfg.P, "box radius")->check(CLI::Range(std::int64_t(1), std::int64_t(100000)));
  count->add_option("--P-list", cfg.P_list, "several box radii")->delimiter(',');
  count->add_option("--smooth", cfg.smooth, "1-based variables restricted to R-smooth values")->delimiter(',');
  count->add_option("--R", cfg.R, "smoothness bound");
  count->add_flag("--pairing", cfg.pairing, "count the doubled system sum c_j (x_j^3 - y_j^3) = 0");
  count->add_option("--csv", cfg.csv_path, "write P,count rows here");

  auto* meanvalue = app.add_subcommand("meanvalue", "I(P;D) counts and the fitted exponent");
  meanvalue->add_option("--matrix", cfg.matrix_path, "matrix D")->required()->check(CLI::ExistingFile);
  meanvalue->add_option("--P-list", cfg.P_list, "box radii")->delimiter(',')->required();
  meanvalue->add_flag("--fit", cfg.fit, "least-squares slope of log count against log P");
  meanvalue->add_option("--csv", cfg.csv_path, "write P,count rows here");

  auto* local = app.add_subcommand("local", "p-adic and real solubility");
  local->add_option("--system", cfg.system_path, "coefficient matrix file")->required()->check(CLI::ExistingFile);
  local->add_option("--depth", cfg.depth, "exponent k of the exhaustive mod p^k search")->capture_default_str()->check(CLI::Range(1, 12));
  local->add_option("--prime-bound", cfg.prime_bound, "check primes up to this (default 9^(r+1))");
  local->add_flag("--kv", cfg.key_value, "also print key=value lines");

  auto* predict = app.add_subcommand("predict", "counted N(P) against S(Q) J(X) P^(s-3r)");
  predict->add_option("--system", cfg.system_path, "coefficient matrix file")->required()->check(CLI::ExistingFile);
  predict->add_option("--Q", cfg.Q, "singular series cutoff")->capture_default_str()->check(CLI::Range(std::int64_t(1), std::int64_t(100000)));
  predict->add_option("--X", cfg.X, "singular integral box")->capture_default_str()->check(CLI::PositiveNumber);
  predict->add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  predict->add_option("--P-list", cfg.P_list, "box radii")->delimiter(',')->required();
  predict->add_option("--csv", cfg.csv_path, "write P,count,predicted,ratio rows here");
  predict->add_flag("--no-enforce", cfg.no_enforce, "run even when s <= 6r");
  predict->add_flag("--skip-local", cfg.skip_local, "skip the local solubility report");

  auto* compare = app.add_subcommand("compare", "check T(P;B) = J(P;B*) for one doubling step");
  compare->add_option("--matrix", cfg.matrix_path, "bicongenial matrix B")->required()->check(CLI::ExistingFile);
  compare->add_option("--type", cfg.type_text, "bicongenial type n,r")->required();
  compare->add_option("--P", cfg.P, "box radius")->required()->check(CLI::Range(std::int64_t(1), std::int64_t(100000)));
  compare->add_option("--R", cfg.R, "smoothness bound")->required();

  auto* expsum = app.add_subcommand("expsum", "Weyl sums f and g at one alpha, with arc diagnostics");
  expsum->add_option("--alpha", cfg.alpha_text, "a/q or a decimal")->required();
  expsum->add_option("--P", cfg.P, "box radius")->required()->check(CLI::Range(std::int64_t(1), std::int64_t(200000)));
  expsum->add_option("--R", cfg.R, "smoothness bound (enables g)");
  expsum->add_option("--L", cfg.L, "L parameter of the arcs")->capture_default_str()->check(CLI::PositiveNumber);
  expsum->add_option("--r", cfg.r_arcs, "number of equations for Q = L^(10r)")->capture_default_str()->check(CLI::Range(1, 8));

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kUsageError;
  }

  Streams io{out, err, want_color(out)};
  const std::string name = app.get_subcommands().front()->get_name();
  cfg.subcommand = name;
  try {
    if (name == "classify") return cmd_classify(cfg, io);
    if (name == "lemma23") return cmd_lemma23(cfg, io);
    if (name == "complify") return cmd_complify(cfg, io);
    if (name == "pipeline") return cmd_pipeline(cfg, io);
    if (name == "count") return cmd_count(cfg, io);
    if (name == "meanvalue") return cmd_meanvalue(cfg, io);
    if (name == "local") return cmd_local(cfg, io);
    if (name == "predict") return cmd_predict(cfg, io);
    if (name == "compare") return cmd_compare(cfg, io);
    if (name == "expsum") return cmd_expsum(cfg, io);
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  err << "unknown subcommand\n";
  return kUsageError;
}

}  // namespace diagcubic::cli
