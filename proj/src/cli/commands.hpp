#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace diagcubic::cli {

// Everything a subcommand may read.  Filled by the option parser and
// validated before any computation starts.
struct RunConfig {
  std::string subcommand;
  std::string matrix_path;
  std::string system_path;
  std::string decomposition_path;
  std::string out_path;
  std::string csv_path;
  std::string type_text;
  std::string bicongenial_text;
  std::string alpha_text;
  std::string tau_text = "1/1704";
  std::int64_t P = 0;
  std::vector<std::int64_t> P_list;
  std::vector<std::int64_t> smooth;  // 1-based on the command line
  std::int64_t R = 0;
  std::int64_t Q = 200;
  double X = 50;
  double tol = 1e-8;
  double L = 2;
  int r_arcs = 1;
  int depth = 4;
  std::int64_t prime_bound = 0;
  int iterations = 1;
  int l = -1;
  double delta = 0.1;
  int rho_max = 8;
  int t_max = 30;
  std::uint64_t seed = 20240607;
  unsigned threads = 1;
  bool dry_run = false;
  bool fit = false;
  bool pairing = false;
  bool key_value = false;
  bool no_enforce = false;
  bool skip_local = false;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color;
};

int cmd_classify(const RunConfig& cfg, Streams& io);
int cmd_lemma23(const RunConfig& cfg, Streams& io);
int cmd_complify(const RunConfig& cfg, Streams& io);
int cmd_pipeline(const RunConfig& cfg, Streams& io);
int cmd_count(const RunConfig& cfg, Streams& io);
int cmd_meanvalue(const RunConfig& cfg, Streams& io);
int cmd_local(const RunConfig& cfg, Streams& io);
int cmd_predict(const RunConfig& cfg, Streams& io);
int cmd_compare(const RunConfig& cfg, Streams& io);
int cmd_expsum(const RunConfig& cfg, Streams& io);

}  // namespace diagcubic::cli
