#include "diagcubic/smooth.hpp"

#include "diagcubic/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace diagcubic {

namespace {
constexpr std::int64_t kMaxSieve = 100'000'000;
}

bool SmoothSet::contains(std::int64_t n) const { return std::binary_search(members.begin(), members.end(), n); }

SmoothSet smooth_set(std::int64_t P, std::int64_t R) {
  if (R < 2 || R > P) throw InvalidArgument("smooth set needs 2 <= R <= P");
  if (P > kMaxSieve) throw InvalidArgument("smooth set bound P too large for the sieve");
  // rest[n] starts at n and loses every prime factor <= R; n is smooth
  // exactly when nothing is left.
  std::vector<std::int64_t> rest(P + 1);
  for (std::int64_t n = 0; n <= P; ++n) rest[n] = n;
  std::vector<char> composite(R + 1, 0);
  for (std::int64_t p = 2; p <= R; ++p) {
    if (composite[p]) continue;
    for (std::int64_t m = p * p; m <= R; m += p) composite[m] = 1;
    for (std::int64_t m = p; m <= P; m += p)
      while (rest[m] % p == 0) rest[m] /= p;
  }
  SmoothSet s{P, R, {}};
  std::vector<std::int64_t> pos;
  for (std::int64_t n = 1; n <= P; ++n)
    if (rest[n] == 1) pos.push_back(n);
  s.members.reserve(2 * pos.size());
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) s.members.push_back(-*it);
  s.members.insert(s.members.end(), pos.begin(), pos.end());
  return s;
}

std::int64_t largest_prime_factor(std::int64_t n) {
  n = std::llabs(n);
  if (n < 2) return 1;
  std::int64_t best = 1;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  return n > 1 ? std::max(best, n) : best;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<char> composite(n + 1, 0);
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::int64_t m = p * p; m <= n; m += p) composite[m] = 1;
  }
  return out;
}

}  // namespace diagcubic
