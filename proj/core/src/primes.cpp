#include "dirichlet/primes.hpp"

#include <limits>
#include <mutex>
#include <utility>

#include "dirichlet/errors.hpp"

namespace dirichlet {

PrimeFactorization::PrimeFactorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {}

unsigned PrimeFactorization::total() const noexcept {
  unsigned omega = 0;
  for (const auto& pp : factors_) omega += pp.exponent;
  return omega;
}

std::uint64_t PrimeFactorization::value() const noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (const auto& pp : factors_) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (n > kMax / pp.prime) return kMax;
      n *= pp.prime;
    }
  }
  return n;
}

PrimeSieve::PrimeSieve(std::uint64_t bound) : bound_(bound < 2 ? 2 : bound), composite_(bound_ + 1, false) {
  composite_[0] = composite_[1] = true;
  for (std::uint64_t i = 2; i <= bound_; ++i) {
    if (composite_[i]) continue;
    primes_.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound_; j += i) composite_[j] = true;
  }
}

const PrimeSieve& PrimeSieve::shared() {
  static const PrimeSieve sieve(kDefaultBound);
  return sieve;
}

bool PrimeSieve::contains(std::uint64_t n) const noexcept { return n <= bound_ && !composite_[n]; }

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeFactorization factorize(std::uint64_t n) { return factorize(n, PrimeSieve::shared()); }

PrimeFactorization factorize(std::uint64_t n, const PrimeSieve& sieve) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<PrimePower> out;
  auto strip = [&](std::uint64_t p) {
    unsigned j = 0;
    while (n % p == 0) {
      n /= p;
      ++j;
    }
    if (j) out.push_back({p, j});
  };

  for (std::uint64_t p : sieve.primes()) {
    if (p * p > n) break;
    strip(p);
  }
  if (n > 1 && sieve.bound() * sieve.bound() < n) {
    // Cofactor may still be composite with all factors above the sieve bound.
    // Continue trial division with a 6k +- 1 wheel, skipping once the rest is prime.
    std::uint64_t p = sieve.bound() + 1;
    while (p % 6 != 1 && p % 6 != 5) ++p;
    bool cofactor_prime = is_prime(n);
    while (n > 1 && !cofactor_prime && static_cast<u128>(p) * p <= n) {
      if (n % p == 0) {
        strip(p);
        cofactor_prime = is_prime(n);
      }
      p += (p % 6 == 1) ? 4 : 2;
    }
  }
  if (n > 1) out.push_back({n, 1});
  return PrimeFactorization(std::move(out));
}

FactorTable::FactorTable(std::uint32_t limit) : limit_(limit), spf_(static_cast<std::size_t>(limit) + 1, 0) {
  for (std::uint32_t i = 2; i <= limit_; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = i;
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit_; j += i) {
      if (spf_[j] == 0) spf_[j] = i;
    }
  }
}

PrimeFactorization FactorTable::factorize(std::uint32_t n) const {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<PrimePower> out;
  for_each_prime_power(n, [&](std::uint32_t p, unsigned j) { out.push_back({p, j}); });
  return PrimeFactorization(std::move(out));
}

}  // namespace dirichlet
