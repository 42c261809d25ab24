#include "diagcubic/congenial.hpp"

#include "diagcubic/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace diagcubic {

LinkedBlockDecomposition read_decomposition(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<BlockPlacement> all;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long v[4];
    for (auto& x : v)
      if (!(ss >> x) || x < 0) throw InvalidArgument("decomposition line " + std::to_string(line_no) + ": expected 'rows cols i j'");
    std::string extra;
    if (ss >> extra) throw InvalidArgument("decomposition line " + std::to_string(line_no) + ": trailing text");
    BlockPlacement b{std::size_t(v[0]), std::size_t(v[1]), std::size_t(v[2]), std::size_t(v[3])};
    if (b.corner_row < b.rows || b.corner_col < b.cols)
      throw InvalidArgument("decomposition line " + std::to_string(line_no) + ": corner lies inside the block size");
    all.push_back(b);
  }
  if (all.empty()) throw InvalidArgument("decomposition lists no blocks");
  LinkedBlockDecomposition d;
  d.head = all.front();
  d.blocks.assign(all.begin() + 1, all.end());
  return d;
}

LinkedBlockDecomposition load_decomposition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open decomposition file '" + path + "'");
  return read_decomposition(in);
}

void write_decomposition(std::ostream& out, const LinkedBlockDecomposition& d) {
  out << "# rows cols i j  (head first, then B_1..B_n)\n";
  auto put = [&](const BlockPlacement& b) {
    out << b.rows << ' ' << b.cols << ' ' << b.corner_row << ' ' << b.corner_col << '\n';
  };
  put(d.head);
  for (const auto& b : d.blocks) put(b);
}

std::string format_decomposition(const LinkedBlockDecomposition& d) {
  std::ostringstream out;
  write_decomposition(out, d);
  return out.str();
}

}  // namespace diagcubic
