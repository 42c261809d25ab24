#include "diagcubic/parallel.hpp"

namespace diagcubic {

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {
double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}
}  // namespace

double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

}  // namespace diagcubic
