#include "diagcubic/quadrature.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/kernels/phase_sums.hpp"
#include "diagcubic/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace diagcubic {

namespace {

// 15-point Kronrod abscissae (positive half, descending) and weights; the
// odd entries are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Node k in 0..14 of the panel [a, b], and its Kronrod / Gauss weights
// (Gauss weight 0 for Kronrod-only nodes).
struct Rule {
  std::array<double, 15> t{}, wk{}, wg{};
  Rule() {
    for (int i = 0; i < 7; ++i) {
      t[i] = -kXgk[i];
      t[14 - i] = kXgk[i];
      wk[i] = wk[14 - i] = kWgk[i];
      wg[i] = wg[14 - i] = (i % 2 == 1) ? kWg[i / 2] : 0.0;
    }
    t[7] = 0;
    wk[7] = kWgk[7];
    wg[7] = kWg[3];
  }
};
const Rule kRule;

struct Panel {
  double a, b, value, error;
};

struct WorseFirst {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error || (x.error == y.error && x.a > y.a); }
};

void evaluate(const BatchIntegrand& f, const std::vector<double>& xs, std::vector<double>& val, std::vector<double>& err,
              unsigned threads) {
  val.assign(xs.size(), 0);
  err.assign(xs.size(), 0);
  if (threads <= 1 || xs.size() < 64) {
    f(xs.data(), xs.size(), val.data(), err.data());
    return;
  }
  map_chunks<int>(xs.size(), 32, threads, [&](std::size_t b, std::size_t e) {
    f(xs.data() + b, e - b, val.data() + b, err.data() + b);
    return 0;
  });
}

std::vector<Panel> eval_panels(const BatchIntegrand& f, const std::vector<std::pair<double, double>>& spans,
                               unsigned threads) {
  std::vector<double> xs;
  xs.reserve(spans.size() * 15);
  for (const auto& [a, b] : spans) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (double t : kRule.t) xs.push_back(c + h * t);
  }
  std::vector<double> val, err;
  evaluate(f, xs, val, err, threads);
  std::vector<Panel> out;
  for (std::size_t p = 0; p < spans.size(); ++p) {
    const double h = 0.5 * (spans[p].second - spans[p].first);
    double k = 0, g = 0, inner = 0;
    for (int i = 0; i < 15; ++i) {
      k += kRule.wk[i] * val[p * 15 + i];
      g += kRule.wg[i] * val[p * 15 + i];
      inner += kRule.wk[i] * err[p * 15 + i];
    }
    out.push_back({spans[p].first, spans[p].second, h * k, std::fabs(h * (k - g)) + std::fabs(h) * inner});
  }
  return out;
}

}  // namespace

QuadResult integrate_adaptive(const BatchIntegrand& f, const std::vector<double>& breaks, const AdaptiveOptions& opts) {
  if (breaks.size() < 2) throw InvalidArgument("integration needs at least two breakpoints");
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) spans.push_back({breaks[i], breaks[i + 1]});
  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> heap;
  double total_err = 0;
  for (const auto& p : eval_panels(f, spans, opts.threads)) {
    heap.push(p);
    total_err += p.error;
  }
  auto current_value = [&] {
    auto copy = heap;
    std::vector<Panel> all;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> v;
    for (const auto& p : all) v.push_back(p.value);
    return pairwise_sum(v);
  };
  double value = current_value();
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::fabs(value))) {
    if (heap.size() >= opts.max_panels)
      throw ConvergenceError("adaptive quadrature did not converge within the panel budget", total_err);
    // split the worst few panels at once (bigger batches for the kernels)
    std::vector<std::pair<double, double>> next;
    const std::size_t batch = std::max<std::size_t>(1, heap.size() / 16);
    for (std::size_t i = 0; i < batch && !heap.empty(); ++i) {
      const Panel p = heap.top();
      heap.pop();
      total_err -= p.error;
      const double m = 0.5 * (p.a + p.b);
      if (!(m > p.a && m < p.b)) throw ConvergenceError("adaptive quadrature hit floating-point resolution", total_err + p.error);
      next.push_back({p.a, m});
      next.push_back({m, p.b});
    }
    for (const auto& p : eval_panels(f, next, opts.threads)) {
      heap.push(p);
      total_err += p.error;
    }
    // recompute exactly to shed drift from the running sum
    total_err = 0;
    {
      auto copy = heap;
      while (!copy.empty()) {
        total_err += copy.top().error;
        copy.pop();
      }
    }
    value = current_value();
  }
  return {value, total_err, heap.size()};
}

std::vector<double> uniform_breaks(double a, double b, double h) {
  if (!(b > a) || !(h > 0)) throw InvalidArgument("uniform_breaks needs a < b and h > 0");
  const std::size_t n = std::size_t(std::ceil((b - a) / h));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a + (b - a) * double(i) / double(n);
  out.back() = b;
  return out;
}

namespace {

// K15 and G7 sums of cos(2 pi (theta u^3 - shift)) over [a, b].
std::pair<double, double> w_panel(double theta, double a, double b, double shift) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, 15> ph, wk, wg;
  for (int i = 0; i < 15; ++i) {
    const double u = c + h * kRule.t[i];
    ph[i] = theta * u * u * u - shift;
    wk[i] = h * kRule.wk[i];
    wg[i] = h * kRule.wg[i];
  }
  return {kernels::cos_dot(ph.data(), wk.data(), 15), kernels::cos_dot(ph.data(), wg.data(), 15)};
}

double w_adapt(double theta, double a, double b, double shift, double tol, int depth, double& err) {
  const auto [k, g] = w_panel(theta, a, b, shift);
  // below ~1e-15 per unit length the difference is rounding noise
  if (std::fabs(k - g) <= std::max(tol, 1e-15 * (b - a)) || depth == 0) {
    err += std::fabs(k - g);
    return k;
  }
  const double m = 0.5 * (a + b);
  return w_adapt(theta, a, m, shift, 0.5 * tol, depth - 1, err) + w_adapt(theta, m, b, shift, 0.5 * tol, depth - 1, err);
}

// int_{lo}^{hi} cos(2 pi (theta u^3 - shift)) du on panels uniform in u^3.
QuadResult w_part(double theta, double lo, double hi, double shift, double tol) {
  const std::size_t n = std::size_t(std::ceil(2 * std::fabs(theta))) + 1;
  QuadResult res;
  std::vector<double> parts;
  auto cube_root_break = [&](std::size_t k) { return std::cbrt(double(k) / double(n)); };
  for (double sign : {-1.0, 1.0}) {
    // the half [0, 1] or [-1, 0], mapped by sign
    if ((sign < 0 && lo >= 0) || (sign > 0 && hi <= 0)) continue;
    for (std::size_t k = 0; k < n; ++k) {
      double a = sign * cube_root_break(k), b = sign * cube_root_break(k + 1);
      if (a > b) std::swap(a, b);
      double err = 0;
      parts.push_back(w_adapt(theta, a, b, shift, tol / double(2 * n), 20, err));
      res.error += err;
      ++res.panels;
    }
  }
  res.value = pairwise_sum(parts);
  return res;
}

}  // namespace

double w_asymptotic(double theta) {
  const double X = 2 * std::numbers::pi * std::fabs(theta);
  if (!(X > 8)) throw InvalidArgument("w_asymptotic needs |theta| large");
  // int_X^inf s^(-2/3) e^(is) ds = i e^(iX) sum_k (-i)^k (2/3)_k X^(-2/3-k)
  std::complex<double> sum = 0, term = std::pow(X, -2.0 / 3.0);
  for (int k = 0; k < 200; ++k) {
    sum += term;
    const std::complex<double> next = term * std::complex<double>(0, -1) * ((2.0 / 3.0 + k) / X);
    if (std::abs(next) >= std::abs(term) || std::abs(next) < 1e-20 * std::abs(sum)) break;
    term = next;
  }
  const std::complex<double> tail = std::complex<double>(0, 1) * std::polar(1.0, X) * sum;
  const double head = std::tgamma(1.0 / 3.0) * std::cos(std::numbers::pi / 6);
  return 2.0 / 3.0 * std::cbrt(1 / X) * (head - tail.real());
}

QuadResult w_integral(double theta, double tol) {
  if (theta == 0) return {2.0, 0.0, 0};
  if (std::fabs(theta) > kWAsymptoticTheta) return {w_asymptotic(theta), 0.0, 0};
  QuadResult half = w_part(theta, 0, 1, 0, 0.5 * tol);
  half.value *= 2;
  half.error *= 2;
  if (half.error > tol) throw ConvergenceError("w(theta) quadrature did not reach the tolerance", half.error);
  return half;
}

double w_eval(double theta, double tol) { return w_integral(theta, tol).value; }

std::complex<double> w_eval_complex(double theta, double tol) {
  if (theta == 0) return {2.0, 0.0};
  if (std::fabs(theta) > kWAsymptoticTheta) return {w_asymptotic(theta), 0.0};
  const QuadResult re = w_part(theta, -1, 1, 0, tol);
  const QuadResult im = w_part(theta, -1, 1, 0.25, tol);  // cos(x - pi/2) = sin x
  if (re.error > tol || im.error > tol) throw ConvergenceError("w(theta) quadrature did not reach the tolerance", std::max(re.error, im.error));
  return {re.value, im.value};
}

std::complex<double> v_eval(double beta, double P) {
  if (!(P > 0)) throw InvalidArgument("v(beta) needs P > 0");
  return {P * w_eval(P * P * P * beta), 0.0};
}

WTable::WTable(double theta_max, double segment, int degree)
    : theta_max_(theta_max), segment_(segment), degree_(degree) {
  if (!(theta_max > 0) || !(segment > 0) || degree < 2) throw InvalidArgument("bad w table parameters");
  const std::size_t nseg = std::size_t(std::ceil(theta_max / segment));
  theta_max_ = double(nseg) * segment;
  const int m = degree + 1;
  coeffs_.assign(nseg * std::size_t(m), 0.0);
  std::vector<double> fx(m);
  for (std::size_t s = 0; s < nseg; ++s) {
    const double a = double(s) * segment, c = a + 0.5 * segment;
    for (int k = 0; k < m; ++k) {
      const double x = std::cos(std::numbers::pi * (k + 0.5) / m);
      fx[k] = w_eval(c + 0.5 * segment * x, 1e-14);
    }
    for (int j = 0; j < m; ++j) {
      double acc = 0;
      for (int k = 0; k < m; ++k) acc += fx[k] * std::cos(std::numbers::pi * j * (k + 0.5) / m);
      coeffs_[s * m + j] = (j == 0 ? 1.0 : 2.0) * acc / m;
    }
  }
}

double WTable::operator()(double theta) const {
  const double t = std::fabs(theta);
  if (t >= theta_max_) return w_eval(t, 1e-13);
  const std::size_t s = std::size_t(t / segment_);
  const double x = 2 * (t - double(s) * segment_) / segment_ - 1;
  const double* c = &coeffs_[s * std::size_t(degree_ + 1)];
  double b1 = 0, b2 = 0;
  for (int j = degree_; j >= 1; --j) {
    const double b0 = 2 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace diagcubic
