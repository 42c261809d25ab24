#pragma once

#include "diagcubic/matrix.hpp"

#include <iosfwd>
#include <string>

namespace diagcubic {

// Text format: lines starting with '#' are comments, the first other line
// is "r s", then r lines of s whitespace-separated signed integers.  The
// writer emits the canonical form (no comments, single spaces), which
// reads back to an identical matrix and rewrites byte-for-byte.
IntMatrix read_matrix(std::istream& in);
IntMatrix parse_matrix(const std::string& text);
IntMatrix load_matrix(const std::string& path);

void write_matrix(std::ostream& out, const IntMatrix& m);
std::string format_matrix(const IntMatrix& m);
void save_matrix(const std::string& path, const IntMatrix& m);

}  // namespace diagcubic
