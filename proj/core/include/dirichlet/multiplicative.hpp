#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirichlet/primes.hpp"

namespace dirichlet {

using Complex = std::complex<double>;

/// a(n) = 1 for every n; L is the Riemann zeta function.
struct AllOnes {};

/// a(n) = values[n mod q]. Values must vanish on residues sharing a factor with
/// q and be multiplicative on the unit group.
struct CharacterMod {
  std::uint64_t modulus;
  std::vector<Complex> values;
};

/// a(p) given explicitly; a(p) = 0 for primes not listed.
struct ExplicitPrimes {
  std::map<std::uint64_t, Complex> values;
};

/// A completely multiplicative function, determined by its values on primes.
class MultiplicativeSpec {
 public:
  using Kind = std::variant<AllOnes, CharacterMod, ExplicitPrimes>;

  /// Validates the kind; throws SpecError when the invariants do not hold.
  explicit MultiplicativeSpec(Kind kind);

  static MultiplicativeSpec all_ones();
  /// The non-principal character mod 4: 1, 0, -1, 0 on n = 1, 2, 3, 4.
  static MultiplicativeSpec chi4();

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  /// Largest prime with a possibly nonzero value; nullopt for periodic kinds.
  std::optional<std::uint64_t> prime_horizon() const;

  /// Period q and the residue table when a(n) depends only on n mod q.
  struct Periodic {
    std::uint64_t modulus;
    const std::vector<Complex>* values;
  };
  std::optional<Periodic> periodic() const;

  Complex at_prime(std::uint64_t p) const;

  /// True when every a(p) is real and nonnegative.
  bool nonnegative() const;

 private:
  Kind kind_;
  std::vector<Complex> ones_{Complex{1.0, 0.0}};
};

/// a(n) = prod a(p)^j over the factorization of n; a(1) = 1.
Complex coefficient(const MultiplicativeSpec& spec, std::uint64_t n);
Complex coefficient(const MultiplicativeSpec& spec, const PrimeFactorization& f);

/// {"kind": "all_ones"} | {"kind": "character", "modulus": q, "values": [[re, im], ...]}
/// | {"kind": "explicit_primes", "values": {"2": [re, im], ...}}
MultiplicativeSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const MultiplicativeSpec& spec);

/// "zeta" and "chi4"; nullopt for anything else.
std::optional<MultiplicativeSpec> builtin_spec(std::string_view name);

}  // namespace dirichlet
