#include "diagcubic/count_engine.hpp"

#include "diagcubic/errors.hpp"
#include "diagcubic/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace diagcubic::engine {

namespace {

using u64 = std::uint64_t;
constexpr long double kCountCap = 9.2e18L;  // keep table counts inside u64
constexpr long double kTotalCap = 1.7e38L;  // unsigned 128-bit
constexpr long double kKeyCap = 4.2e37L;    // ~2^125, headroom for partial sums

struct Table {
  std::vector<Key> keys;  // ascending
  std::vector<u64> counts;
};

Total checked_mul(Total a, Total b, const char* what) {
  Total out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceGuardError(std::string(what) + " overflows 128 bits");
  return out;
}

// Same-direction terms are merged while the merged distribution stays small.
struct Reduced {
  std::vector<std::int64_t> dir;
  Distribution dist;
};

long double estimate_merge(const Distribution& a, const Distribution& b) {
  const long double range = 2.0L * ((long double)a.max_abs() + b.max_abs()) + 1;
  return std::min(range, (long double)a.size() * b.size());
}

struct Cost {
  double entries_left = 0, entries_right = 0, rec_left = 0, rec_right = 0, join = 0, total = 0;
  bool ok = false;
};

class Planner {
 public:
  Planner(const Plan& plan, const Limits& limits) : plan_(plan), limits_(limits) {
    const auto& t = plan.terms;
    dir_id_.resize(t.size());
    std::map<std::vector<std::int64_t>, std::size_t> ids;
    for (std::size_t k = 0; k < t.size(); ++k) dir_id_[k] = ids.emplace(t[k].column, ids.size()).first->second;
    ndirs_ = ids.size();
  }

  // Terms in build order: grouped by direction, small first.
  std::vector<std::size_t> order(std::vector<std::size_t> s) const {
    std::sort(s.begin(), s.end(), [&](std::size_t a, std::size_t b) {
      if (dir_id_[a] != dir_id_[b]) return dir_id_[a] < dir_id_[b];
      if (plan_.terms[a].dist.size() != plan_.terms[b].dist.size())
        return plan_.terms[a].dist.size() < plan_.terms[b].dist.size();
      return a < b;
    });
    return s;
  }

  // Entries after tabulating s, and the records generated on the way.
  std::pair<double, double> build_cost(const std::vector<std::size_t>& s) const {
    std::vector<long double> sumabs(ndirs_, 0), prod(ndirs_, 1);
    long double entries = 1, records = 0;
    for (std::size_t k : order(s)) {
      const auto& d = plan_.terms[k].dist;
      records += entries * d.size() * (std::log2((long double)d.size() + 1) + 1);
      const std::size_t id = dir_id_[k];
      sumabs[id] += d.max_abs();
      prod[id] = std::min<long double>(prod[id] * d.size(), 1e30L);
      entries = 1;
      for (std::size_t i = 0; i < ndirs_; ++i)
        if (prod[i] > 1 || sumabs[i] > 0) entries *= std::min(2 * sumabs[i] + 1, prod[i]);
      entries = std::min<long double>(entries, 1e30L);
    }
    return {double(entries), double(records)};
  }

  long double weight_product(const std::vector<std::size_t>& s) const {
    long double p = 1;
    for (std::size_t k : s) p *= (long double)plan_.terms[k].dist.total();
    return p;
  }

  Cost evaluate(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right, bool stream) const {
    Cost c;
    if (right.empty()) return c;
    const auto [el, rl] = build_cost(left);
    std::vector<std::size_t> tab = right;
    if (stream) tab.pop_back();
    const auto [er, rr] = build_cost(tab);
    if (el > limits_.max_table_entries || er > limits_.max_table_entries) return c;
    if (weight_product(left) > kCountCap || weight_product(tab) > kCountCap) return c;
    c.entries_left = el;
    c.entries_right = er;
    c.rec_left = rl;
    c.rec_right = rr;
    if (stream) {
      const auto& z = plan_.terms[right.back()].dist;
      c.join = er * double(z.size()) * (std::log2(el + 2) + 1);
    } else {
      c.join = std::min(el, er) * (std::log2(std::max(el, er) + 2) + 1);
    }
    c.total = rl + rr + c.join;
    c.ok = true;
    return c;
  }

 private:
  const Plan& plan_;
  const Limits& limits_;
  std::vector<std::size_t> dir_id_;
  std::size_t ndirs_ = 0;
};

Table unit_table() { return {{Key(0)}, {1}}; }

std::vector<Key> term_weights(const Plan& plan) {
  // balanced mixed radix: row i gets weight W_i, W_{i+1} = W_i (2 B_i + 1)
  std::vector<long double> bound(plan.rows, 0);
  for (const auto& t : plan.terms)
    for (std::size_t i = 0; i < plan.rows; ++i)
      bound[i] += std::fabs((long double)t.column[i]) * (long double)t.dist.max_abs();
  long double span = 1;
  for (auto b : bound) span *= 2 * b + 1;
  if (span > kKeyCap) throw ResourceGuardError("packed key space exceeds 125 bits; shrink P or coefficients");
  std::vector<Key> radix(plan.rows);
  Key w = 1;
  for (std::size_t i = 0; i < plan.rows; ++i) {
    radix[i] = w;
    std::int64_t b = 0;
    for (const auto& t : plan.terms) b += std::llabs(t.column[i]) * t.dist.max_abs();
    w *= 2 * Key(b) + 1;
  }
  std::vector<Key> out;
  for (const auto& t : plan.terms) {
    Key k = 0;
    for (std::size_t i = 0; i < plan.rows; ++i) k += Key(t.column[i]) * radix[i];
    out.push_back(k);
  }
  return out;
}

Table build_dense(const std::vector<std::size_t>& order, const Plan& plan, const std::vector<Key>& w,
                  std::size_t span) {
  const std::int64_t offset = std::int64_t(span / 2);
  std::vector<u64> cur(span, 0), nxt(span, 0);
  std::int64_t lo = offset, hi = offset;  // nonzero window of cur
  cur[offset] = 1;
  std::int64_t dirty_lo = 1, dirty_hi = 0;  // window of nxt that may hold junk
  for (std::size_t k : order) {
    const auto& d = plan.terms[k].dist;
    const std::int64_t wk = std::int64_t(w[k]);
    std::int64_t smin = wk * d.values.front(), smax = wk * d.values.back();
    if (smin > smax) std::swap(smin, smax);
    const std::int64_t nlo = lo + smin, nhi = hi + smax;
    if (dirty_lo <= dirty_hi) std::fill(nxt.begin() + dirty_lo, nxt.begin() + dirty_hi + 1, 0);
    std::fill(nxt.begin() + nlo, nxt.begin() + nhi + 1, 0);
    for (std::int64_t i = lo; i <= hi; ++i) {
      const u64 c = cur[i];
      if (!c) continue;
      for (std::size_t j = 0; j < d.size(); ++j) nxt[i + wk * d.values[j]] += c * d.weights[j];
    }
    dirty_lo = lo;
    dirty_hi = hi;
    std::swap(cur, nxt);
    lo = nlo;
    hi = nhi;
  }
  Table t;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (cur[i]) {
      t.keys.push_back(Key(i - offset));
      t.counts.push_back(cur[i]);
    }
  return t;
}

Table extend_sparse(const Table& cur, const Distribution& d, Key w) {
  const std::size_t k = d.size();
  std::vector<Key> shift(k);
  std::vector<u64> mult(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = w > 0 ? j : k - 1 - j;  // keep shifts ascending
    shift[j] = w * Key(d.values[src]);
    mult[j] = d.weights[src];
  }
  struct Node {
    Key key;
    std::uint32_t stream;
    std::size_t pos;
  };
  auto later = [](const Node& a, const Node& b) { return a.key > b.key || (a.key == b.key && a.stream > b.stream); };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> heap(later);
  for (std::uint32_t j = 0; j < k; ++j) heap.push({cur.keys[0] + shift[j], j, 0});
  Table out;
  out.keys.reserve(std::min<std::size_t>(cur.keys.size() * k, std::size_t(1) << 26));
  out.counts.reserve(out.keys.capacity());
  while (!heap.empty()) {
    Node n = heap.top();
    heap.pop();
    const u64 c = cur.counts[n.pos] * mult[n.stream];
    if (!out.keys.empty() && out.keys.back() == n.key) out.counts.back() += c;
    else {
      out.keys.push_back(n.key);
      out.counts.push_back(c);
    }
    if (++n.pos < cur.keys.size()) {
      n.key = cur.keys[n.pos] + shift[n.stream];
      heap.push(n);
    }
  }
  return out;
}

Table build(const std::vector<std::size_t>& order, const Plan& plan, const std::vector<Key>& w, const Limits& limits) {
  long double span = 1;
  for (std::size_t k : order) span += 2.0L * std::fabs((long double)w[k]) * plan.terms[k].dist.max_abs();
  if (!order.empty() && span <= (long double)limits.dense_span) return build_dense(order, plan, w, std::size_t(span));
  Table t = unit_table();
  for (std::size_t k : order) t = extend_sparse(t, plan.terms[k].dist, w[k]);
  return t;
}

Total join_tables(const Table& a, const Table& b, unsigned threads) {
  const Table& small = a.keys.size() <= b.keys.size() ? a : b;
  const Table& big = &small == &a ? b : a;
  auto parts = map_chunks<Total>(small.keys.size(), 64, threads, [&](std::size_t s, std::size_t e) {
    Total acc = 0;
    for (std::size_t i = s; i < e; ++i) {
      const Key target = -small.keys[i];
      auto it = std::lower_bound(big.keys.begin(), big.keys.end(), target);
      if (it != big.keys.end() && *it == target)
        acc += Total(small.counts[i]) * big.counts[std::size_t(it - big.keys.begin())];
    }
    return acc;
  });
  Total total = 0;
  for (Total p : parts) total += p;
  return total;
}

Total probe_stream(const Table& left, const Table& prefix, const Distribution& last, Key w, unsigned threads) {
  auto parts = map_chunks<Total>(prefix.keys.size(), 256, threads, [&](std::size_t s, std::size_t e) {
    Total acc = 0;
    for (std::size_t i = s; i < e; ++i) {
      const Key base = prefix.keys[i];
      Total inner = 0;
      for (std::size_t j = 0; j < last.size(); ++j) {
        const Key target = -(base + w * Key(last.values[j]));
        auto it = std::lower_bound(left.keys.begin(), left.keys.end(), target);
        if (it != left.keys.end() && *it == target)
          inner += Total(last.weights[j]) * left.counts[std::size_t(it - left.keys.begin())];
      }
      acc += inner * prefix.counts[i];
    }
    return acc;
  });
  Total total = 0;
  for (Total p : parts) total += p;
  return total;
}

}  // namespace

std::string to_string(Total v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

Total Distribution::total() const {
  Total t = 0;
  for (u64 w : weights) t += w;
  return t;
}

std::int64_t Distribution::max_abs() const {
  if (values.empty()) return 0;
  return std::max(std::llabs(values.front()), std::llabs(values.back()));
}

Distribution distribution_of(std::vector<std::int64_t> samples) {
  std::sort(samples.begin(), samples.end());
  Distribution d;
  for (std::int64_t v : samples) {
    if (!d.values.empty() && d.values.back() == v) ++d.weights.back();
    else {
      d.values.push_back(v);
      d.weights.push_back(1);
    }
  }
  return d;
}

Distribution negated(const Distribution& d) {
  Distribution out;
  out.values.assign(d.values.rbegin(), d.values.rend());
  for (auto& v : out.values) v = -v;
  out.weights.assign(d.weights.rbegin(), d.weights.rend());
  return out;
}

Distribution scaled(const Distribution& d, std::int64_t g) {
  if (g == 0) throw InvalidArgument("scaling a distribution by zero");
  if (g < 0) return scaled(negated(d), -g);
  Distribution out = d;
  for (auto& v : out.values) {
    std::int64_t r;
    if (__builtin_mul_overflow(v, g, &r)) throw ResourceGuardError("scaled term value overflows 64 bits");
    v = r;
  }
  return out;
}

Distribution convolve(const Distribution& a, const Distribution& b, std::size_t max_pairs) {
  if (a.values.empty() || b.values.empty()) return {};
  if ((long double)a.total() * (long double)b.total() > kCountCap)
    throw ResourceGuardError("convolved multiplicities overflow 64 bits");
  const long double span = (long double)a.values.back() + b.values.back() - a.values.front() - b.values.front() + 1;
  Distribution out;
  if (span <= (long double)(std::size_t(1) << 25)) {
    const std::int64_t base = a.values.front() + b.values.front();
    std::vector<u64> acc(std::size_t(span), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) acc[a.values[i] + b.values[j] - base] += a.weights[i] * b.weights[j];
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (acc[k]) {
        out.values.push_back(base + std::int64_t(k));
        out.weights.push_back(acc[k]);
      }
    return out;
  }
  if ((long double)a.size() * b.size() > (long double)max_pairs)
    throw ResourceGuardError("one-dimensional convolution too large");
  std::vector<std::pair<std::int64_t, u64>> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t s;
      if (__builtin_add_overflow(a.values[i], b.values[j], &s)) throw ResourceGuardError("sum overflows 64 bits");
      pairs.push_back({s, a.weights[i] * b.weights[j]});
    }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [v, w] : pairs) {
    if (!out.values.empty() && out.values.back() == v) out.weights.back() += w;
    else {
      out.values.push_back(v);
      out.weights.push_back(w);
    }
  }
  return out;
}

std::string Plan::describe() const {
  std::ostringstream o;
  o << "terms after reduction: " << terms.size() << " (left " << left.size() << ", right " << right.size()
    << (stream_last ? ", last streamed" : "") << ")\n";
  o << "raw search space: 10^" << log10_raw_tuples << "\n";
  o << "estimated table entries: left " << left_entries << ", right " << right_entries << "\n";
  o << "estimated work: build " << left_records + right_records << ", join " << join_work << ", total "
    << total_work << "\n";
  o << "estimated table memory: " << (left_entries + right_entries) * 24.0 / (1 << 20) << " MiB\n";
  return o.str();
}

Plan make_plan(const Problem& problem, const Limits& limits) {
  Plan plan;
  plan.rows = problem.rows;
  std::map<std::vector<std::int64_t>, std::vector<Distribution>> groups;
  for (const auto& term : problem.terms) {
    if (term.column.size() != problem.rows) throw InvalidArgument("term column has the wrong length");
    plan.log10_raw_tuples += term.dist.values.empty() ? 0.0 : double(std::log10((long double)term.dist.total()));
    if (term.dist.values.empty()) {
      plan.zero_column_factor = 0;
      continue;
    }
    std::int64_t g = 0;
    for (auto c : term.column) g = std::gcd(g, std::llabs(c));
    if (g == 0) {
      plan.zero_column_factor = checked_mul(plan.zero_column_factor, term.dist.total(), "count");
      continue;
    }
    const auto first = *std::find_if(term.column.begin(), term.column.end(), [](auto c) { return c != 0; });
    if (first < 0) g = -g;
    std::vector<std::int64_t> dir(term.column);
    for (auto& c : dir) c /= g;
    groups[dir].push_back(scaled(term.dist, g));
  }
  for (auto& [dir, dists] : groups) {
    std::stable_sort(dists.begin(), dists.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    Distribution acc = dists.front();
    for (std::size_t i = 1; i < dists.size(); ++i) {
      const bool small = estimate_merge(acc, dists[i]) <= (long double)limits.merge_values &&
                         (long double)acc.total() * (long double)dists[i].total() <= kCountCap;
      if (small) {
        acc = convolve(acc, dists[i]);
      } else {
        plan.terms.push_back({dir, std::move(acc)});
        acc = dists[i];
      }
    }
    plan.terms.push_back({dir, std::move(acc)});
  }

  const std::size_t m = plan.terms.size();
  if (m == 0) return plan;
  long double all = 1;
  for (const auto& t : plan.terms) all *= (long double)t.dist.total();
  if (all * (long double)plan.zero_column_factor > kTotalCap) throw ResourceGuardError("solution count may overflow 128 bits");

  Planner planner(plan, limits);
  Cost best;
  std::vector<std::size_t> best_left, best_right;
  bool best_stream = false;
  auto consider = [&](const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
    for (int stream = 0; stream < 2; ++stream) {
      if (stream && right.empty()) continue;
      // for streaming, try each right term as the streamed one
      const std::size_t tries = stream ? right.size() : 1;
      for (std::size_t z = 0; z < tries; ++z) {
        std::vector<std::size_t> r = planner.order(right);
        if (stream) {
          const std::size_t pick = right[z];
          r.erase(std::find(r.begin(), r.end(), pick));
          r.push_back(pick);
        }
        Cost c = planner.evaluate(left, r, stream);
        if (c.ok && (!best.ok || c.total < best.total)) {
          best = c;
          best_left = planner.order(left);
          best_right = r;
          best_stream = stream;
        }
      }
    }
  };
  if (m <= 14) {
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::vector<std::size_t> left, right;
      for (std::size_t k = 0; k < m; ++k) (mask >> k & 1 ? left : right).push_back(k);
      consider(left, right);
    }
  } else {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](auto a, auto b) { return plan.terms[a].dist.size() > plan.terms[b].dist.size(); });
    std::vector<std::size_t> left, right;
    for (std::size_t k : idx) {
      auto l2 = left, r2 = right;
      l2.push_back(k);
      r2.push_back(k);
      (planner.build_cost(l2).first <= planner.build_cost(r2).first ? left : right).push_back(k);
    }
    if (right.empty()) {
      right.push_back(left.back());
      left.pop_back();
    }
    consider(left, right);
  }
  if (!best.ok) throw ResourceGuardError("no meet-in-the-middle split fits the table budget");
  plan.left = best_left;
  plan.right = best_right;
  plan.stream_last = best_stream;
  plan.left_entries = best.entries_left;
  plan.right_entries = best.entries_right;
  plan.left_records = best.rec_left;
  plan.right_records = best.rec_right;
  plan.join_work = best.join;
  plan.total_work = best.total;
  if (std::min(best.rec_left, best.rec_right) > limits.max_half_records)
    throw ResourceGuardError("smaller half would generate more than the allowed number of partial sums");
  if (best.total > limits.max_total_work) throw ResourceGuardError("estimated work exceeds the budget");
  return plan;
}

Total execute(const Plan& plan, unsigned threads, const Limits& limits) {
  if (plan.zero_column_factor == 0) return 0;
  if (plan.terms.empty()) return plan.zero_column_factor;
  const std::vector<Key> w = term_weights(plan);
  const Table left = plan.left.empty() ? unit_table() : build(plan.left, plan, w, limits);
  Total count;
  if (plan.stream_last) {
    std::vector<std::size_t> prefix(plan.right.begin(), plan.right.end() - 1);
    const Table pre = prefix.empty() ? unit_table() : build(prefix, plan, w, limits);
    const std::size_t z = plan.right.back();
    count = probe_stream(left, pre, plan.terms[z].dist, w[z], threads);
  } else {
    count = join_tables(left, build(plan.right, plan, w, limits), threads);
  }
  return checked_mul(count, plan.zero_column_factor, "count");
}

Total count_zero_sums(const Problem& problem, const Limits& limits, unsigned threads) {
  return execute(make_plan(problem, limits), threads, limits);
}

}  // namespace diagcubic::engine
