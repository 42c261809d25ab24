#pragma once

// Local solubility of C x^3 = 0: p-adic searches with Hensel lifting and a
// real witness search.

#include "diagcubic/counting.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace diagcubic {

enum class LocalStatus {
  Soluble,           // witness mod p^k that lifts by Hensel's lemma
  SolubleByTheorem,  // p beyond the cutoff, no search
  InsolubleUpTo,     // no primitive solution mod p^k (so none p-adically)
  Undetermined,
};

const char* status_name(LocalStatus s);

struct PrimeVerdict {
  std::int64_t p = 0;
  LocalStatus status = LocalStatus::Undetermined;
  int k = 0;                        // witness modulus exponent, or searched depth
  std::vector<std::int64_t> witness;  // residues mod p^k when Soluble
  std::string note;
};

struct LocalOptions {
  int depth = 4;                 // exponent of the exhaustive insolubility search
  std::int64_t prime_bound = 0;  // 0: the theorem cutoff 9^(r+1)
  unsigned threads = 1;
  std::uint64_t seed = 20240607;
  double max_states = 2e7;   // residue-vector states per DP layer
  double max_work = 4e8;     // DP transitions per search
};

// 9^(r+1): above this every prime is covered by the theorem.
std::int64_t local_cutoff(std::size_t r);

// x mod p, not all zero, with C x^3 = 0 mod p and the Jacobian (3 c_ij x_j^2)
// of rank r mod p.  Exhaustive when p^s is small, otherwise a seeded random
// search; nullopt when nothing was found (never for p = 3, where the
// Jacobian vanishes identically).
std::optional<std::vector<std::int64_t>> nonsingular_solution_mod_p(const DiagonalCubicSystem& sys, std::int64_t p,
                                                                    std::uint64_t seed = 20240607);

PrimeVerdict p_adic_soluble(const DiagonalCubicSystem& sys, std::int64_t p, const LocalOptions& opts = {});

// C x^3 = 0 mod p^k with some x_j a unit mod p.
bool verify_witness(const DiagonalCubicSystem& sys, std::int64_t p, int k, const std::vector<std::int64_t>& x);

struct RealSolution {
  bool found = false;
  std::vector<double> point;  // max |x_j| = 1
  double residual = 0;        // max_i |sum_j c_ij x_j^3|
};

// Seeded random restarts on the sphere, minimum-norm Newton steps, then a
// residual check at 1e-9.
RealSolution real_solution(const DiagonalCubicSystem& sys, std::uint64_t seed = 20240607);

struct LocalReport {
  std::size_t r = 0;
  std::int64_t cutoff = 0;         // 9^(r+1)
  std::int64_t checked_bound = 0;  // primes <= this were searched
  std::vector<PrimeVerdict> primes;
  RealSolution real;

  // Soluble at every checked prime, checked up to the cutoff, and a real
  // witness was found.
  bool locally_soluble() const;
  std::vector<std::int64_t> obstructions() const;  // primes with InsolubleUpTo
};

LocalReport local_check_all(const DiagonalCubicSystem& sys, const LocalOptions& opts = {});

}  // namespace diagcubic
