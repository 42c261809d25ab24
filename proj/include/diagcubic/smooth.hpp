#pragma once

#include <cstdint>
#include <vector>

namespace diagcubic {

// Integers n with 0 < |n| <= P whose prime factors are all <= R.  Zero is
// left out: every prime divides 0.
struct SmoothSet {
  std::int64_t P = 0;
  std::int64_t R = 0;
  std::vector<std::int64_t> members;  // ascending

  std::size_t size() const noexcept { return members.size(); }
  bool contains(std::int64_t n) const;
};

// Throws InvalidArgument unless 2 <= R <= P (and P within sieve range).
SmoothSet smooth_set(std::int64_t P, std::int64_t R);

// Largest prime factor of n >= 2 (1 for n = 1), by trial division.
std::int64_t largest_prime_factor(std::int64_t n);

// Primes up to n.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

}  // namespace diagcubic
