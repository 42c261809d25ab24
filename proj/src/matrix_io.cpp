#include "diagcubic/matrix_io.hpp"

#include "diagcubic/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace diagcubic {

namespace {

bool is_skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

BigInt parse_integer(const std::string& token, std::size_t line_no) {
  std::size_t start = 0;
  bool negative = false;
  if (!token.empty() && (token[0] == '-' || token[0] == '+')) {
    negative = token[0] == '-';
    start = 1;
  }
  if (start == token.size()) throw InvalidArgument("line " + std::to_string(line_no) + ": bad integer '" + token + "'");
  for (std::size_t i = start; i < token.size(); ++i)
    if (token[i] < '0' || token[i] > '9')
      throw InvalidArgument("line " + std::to_string(line_no) + ": bad integer '" + token + "'");
  BigInt v(token.substr(start));
  return negative ? BigInt(-v) : v;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

IntMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0, cols = 0;
  bool have_header = false;
  std::vector<std::vector<BigInt>> data;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    auto tokens = split(line);
    if (!have_header) {
      if (tokens.size() != 2) throw InvalidArgument("line " + std::to_string(line_no) + ": expected 'r s'");
      const BigInt r = parse_integer(tokens[0], line_no), s = parse_integer(tokens[1], line_no);
      if (r <= 0 || s <= 0 || r > 100000 || s > 100000)
        throw InvalidArgument("line " + std::to_string(line_no) + ": matrix dimensions must be positive");
      rows = static_cast<std::size_t>(r);
      cols = static_cast<std::size_t>(s);
      have_header = true;
      continue;
    }
    if (data.size() == rows) throw InvalidArgument("line " + std::to_string(line_no) + ": more rows than declared");
    if (tokens.size() != cols) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                            " entries, found " + std::to_string(tokens.size()));
    }
    std::vector<BigInt> row;
    row.reserve(cols);
    for (const auto& t : tokens) row.push_back(parse_integer(t, line_no));
    data.push_back(std::move(row));
  }
  if (!have_header) throw InvalidArgument("matrix text has no 'r s' header");
  if (data.size() != rows) {
    throw InvalidArgument("expected " + std::to_string(rows) + " rows, found " + std::to_string(data.size()));
  }
  return IntMatrix::from_rows(data);
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

IntMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

void save_matrix(const std::string& path, const IntMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write matrix file '" + path + "'");
  write_matrix(out, m);
}

}  // namespace diagcubic
