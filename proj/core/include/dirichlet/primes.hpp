#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dirichlet {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes. Empty for n = 1.
class PrimeFactorization {
 public:
  PrimeFactorization() = default;
  explicit PrimeFactorization(std::vector<PrimePower> factors);

  std::span<const PrimePower> factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }

  /// Number of distinct primes, omega(n).
  unsigned distinct() const noexcept { return static_cast<unsigned>(factors_.size()); }
  /// Number of prime factors with multiplicity, Omega(n).
  unsigned total() const noexcept;
  /// Reconstructs n; saturates at UINT64_MAX on overflow.
  std::uint64_t value() const noexcept;

  friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Shared, read-only list of primes up to a bound. Built once on first use.
class PrimeSieve {
 public:
  static constexpr std::uint64_t kDefaultBound = 1'000'000;

  explicit PrimeSieve(std::uint64_t bound);

  /// Process-wide sieve with kDefaultBound; construction is thread-safe.
  static const PrimeSieve& shared();

  std::uint64_t bound() const noexcept { return bound_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  bool contains(std::uint64_t n) const noexcept;

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> primes_;
  std::vector<bool> composite_;
};

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

/// Throws DomainError for n = 0. Any n < 2^64 is supported.
PrimeFactorization factorize(std::uint64_t n);
PrimeFactorization factorize(std::uint64_t n, const PrimeSieve& sieve);

/// Smallest-prime-factor table for bulk factorization of 1..limit.
class FactorTable {
 public:
  explicit FactorTable(std::uint32_t limit);

  std::uint32_t limit() const noexcept { return limit_; }
  std::uint32_t smallest_factor(std::uint32_t n) const noexcept { return spf_[n]; }
  PrimeFactorization factorize(std::uint32_t n) const;

  /// Calls fn(prime, exponent) for each prime power exactly dividing n; no allocation.
  template <typename Fn>
  void for_each_prime_power(std::uint32_t n, Fn&& fn) const {
    while (n > 1) {
      const std::uint32_t p = spf_[n];
      unsigned j = 0;
      while (n % p == 0) {
        n /= p;
        ++j;
      }
      fn(p, j);
    }
  }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace dirichlet
