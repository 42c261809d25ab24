#include "diagcubic/counting.hpp"
#include "diagcubic/errors.hpp"

#include <cmath>

namespace diagcubic {

ExponentFit fit_exponent(const std::vector<std::pair<std::int64_t, double>>& points, FitAbscissa abscissa) {
  ExponentFit fit;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i && points[i].first <= points[i - 1].first) throw InvalidArgument("P values must be strictly increasing");
    if (!(points[i].second > 0)) throw InvalidArgument("counts must be positive");
    if (points[i].first >= 4) fit.points.push_back(points[i]);
  }
  if (fit.points.size() < 3) throw InvalidArgument("exponent fit needs at least three points with P >= 4");
  std::vector<double> xs, ys;
  for (const auto& [P, c] : fit.points) {
    xs.push_back(abscissa == FitAbscissa::LogP ? std::log(double(P)) : std::log(2.0 * double(P) + 1));
    ys.push_back(std::log(c));
  }
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::fabs(ys[i] - fit.intercept - fit.slope * xs[i]));
  return fit;
}

}  // namespace diagcubic
