#include "dirichlet/multiplicative.hpp"

#include <cmath>
#include <numeric>

#include "dirichlet/errors.hpp"
#include "dirichlet/json_io.hpp"

namespace dirichlet {

namespace {

constexpr double kValueTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void validate(const CharacterMod& c) {
  const std::uint64_t q = c.modulus;
  if (q == 0) throw SpecError("character: modulus must be positive");
  if (c.values.size() != q) throw SpecError("character: expected one value per residue 0..q-1");
  if (std::abs(c.values[1 % q] - Complex{1.0, 0.0}) > kValueTol) throw SpecError("character: value at 1 must be 1");
  for (std::uint64_t r = 0; r < q; ++r) {
    const bool unit = std::gcd(r, q) == 1;
    const double mag = std::abs(c.values[r]);
    if (!unit && mag > kValueTol) throw SpecError("character: nonzero value on residue not coprime to modulus");
    if (unit && std::abs(mag - 1.0) > 1e-9) throw SpecError("character: values on units must have modulus 1");
  }
  for (std::uint64_t a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    for (std::uint64_t b = a; b < q; ++b) {
      if (std::gcd(b, q) != 1) continue;
      const Complex lhs = c.values[(a * b) % q];
      if (std::abs(lhs - c.values[a] * c.values[b]) > 1e-9) throw SpecError("character: values are not multiplicative");
    }
  }
}

void validate(const ExplicitPrimes& e) {
  for (const auto& [p, v] : e.values) {
    if (!is_prime(p)) throw SpecError("explicit_primes: key " + std::to_string(p) + " is not prime");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw SpecError("explicit_primes: non-finite value");
  }
}

}  // namespace

MultiplicativeSpec::MultiplicativeSpec(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{[](const AllOnes&) {}, [](const CharacterMod& c) { validate(c); },
                        [](const ExplicitPrimes& e) { validate(e); }},
             kind_);
}

MultiplicativeSpec MultiplicativeSpec::all_ones() { return MultiplicativeSpec(AllOnes{}); }

MultiplicativeSpec MultiplicativeSpec::chi4() {
  return MultiplicativeSpec(CharacterMod{4, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{-1, 0}}});
}

std::string MultiplicativeSpec::name() const {
  return std::visit(overloaded{[](const AllOnes&) { return std::string("all_ones"); },
                               [](const CharacterMod& c) { return "character_mod_" + std::to_string(c.modulus); },
                               [](const ExplicitPrimes&) { return std::string("explicit_primes"); }},
                    kind_);
}

std::optional<std::uint64_t> MultiplicativeSpec::prime_horizon() const {
  if (const auto* e = std::get_if<ExplicitPrimes>(&kind_)) {
    std::uint64_t horizon = 1;
    for (const auto& [p, v] : e->values) {
      if (v != Complex{0.0, 0.0}) horizon = p;
    }
    return horizon;
  }
  return std::nullopt;
}

std::optional<MultiplicativeSpec::Periodic> MultiplicativeSpec::periodic() const {
  if (std::holds_alternative<AllOnes>(kind_)) return Periodic{1, &ones_};
  if (const auto* c = std::get_if<CharacterMod>(&kind_)) return Periodic{c->modulus, &c->values};
  return std::nullopt;
}

Complex MultiplicativeSpec::at_prime(std::uint64_t p) const {
  return std::visit(overloaded{[](const AllOnes&) { return Complex{1.0, 0.0}; },
                               [p](const CharacterMod& c) { return c.values[p % c.modulus]; },
                               [p](const ExplicitPrimes& e) {
                                 auto it = e.values.find(p);
                                 return it == e.values.end() ? Complex{0.0, 0.0} : it->second;
                               }},
                    kind_);
}

bool MultiplicativeSpec::nonnegative() const {
  return std::visit(overloaded{[](const AllOnes&) { return true; },
                               [](const CharacterMod& c) {
                                 for (const auto& v : c.values) {
                                   if (v.imag() != 0.0 || v.real() < 0.0) return false;
                                 }
                                 return true;
                               },
                               [](const ExplicitPrimes& e) {
                                 for (const auto& [p, v] : e.values) {
                                   if (v.imag() != 0.0 || v.real() < 0.0) return false;
                                 }
                                 return true;
                               }},
                    kind_);
}

Complex coefficient(const MultiplicativeSpec& spec, std::uint64_t n) {
  if (n == 0) throw DomainError("coefficient: n must be positive");
  return coefficient(spec, factorize(n));
}

Complex coefficient(const MultiplicativeSpec& spec, const PrimeFactorization& f) {
  Complex r{1.0, 0.0};
  for (const auto& pp : f.factors()) {
    const Complex ap = spec.at_prime(pp.prime);
    for (unsigned i = 0; i < pp.exponent; ++i) r *= ap;
  }
  return r;
}

MultiplicativeSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SpecError("spec: expected an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "all_ones") return MultiplicativeSpec(AllOnes{});
  if (kind == "character") {
    if (!j.contains("modulus") || !j.contains("values")) throw SpecError("character: needs \"modulus\" and \"values\"");
    CharacterMod c;
    c.modulus = j.at("modulus").get<std::uint64_t>();
    for (const auto& v : j.at("values")) c.values.push_back(complex_from_json(v));
    return MultiplicativeSpec(std::move(c));
  }
  if (kind == "explicit_primes") {
    if (!j.contains("values") || !j.at("values").is_object()) throw SpecError("explicit_primes: \"values\" must be an object");
    ExplicitPrimes e;
    for (const auto& [key, v] : j.at("values").items()) {
      std::uint64_t p = 0;
      try {
        p = std::stoull(key);
      } catch (const std::exception&) {
        throw SpecError("explicit_primes: key \"" + key + "\" is not an integer");
      }
      e.values[p] = complex_from_json(v);
    }
    return MultiplicativeSpec(std::move(e));
  }
  throw SpecError("spec: unknown kind \"" + kind + "\"");
}

nlohmann::json spec_to_json(const MultiplicativeSpec& spec) {
  return std::visit(overloaded{[](const AllOnes&) { return nlohmann::json{{"kind", "all_ones"}}; },
                               [](const CharacterMod& c) {
                                 nlohmann::json values = nlohmann::json::array();
                                 for (const auto& v : c.values) values.push_back(complex_to_json(v));
                                 return nlohmann::json{{"kind", "character"}, {"modulus", c.modulus}, {"values", values}};
                               },
                               [](const ExplicitPrimes& e) {
                                 nlohmann::json values = nlohmann::json::object();
                                 for (const auto& [p, v] : e.values) values[std::to_string(p)] = complex_to_json(v);
                                 return nlohmann::json{{"kind", "explicit_primes"}, {"values", values}};
                               }},
                    spec.kind());
}

std::optional<MultiplicativeSpec> builtin_spec(std::string_view name) {
  if (name == "zeta") return MultiplicativeSpec::all_ones();
  if (name == "chi4") return MultiplicativeSpec::chi4();
  return std::nullopt;
}

}  // namespace dirichlet
