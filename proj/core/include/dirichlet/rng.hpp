#pragma once

#include <cstdint>
#include <limits>

namespace dirichlet {

/// Counter-based generator: the i-th output is a fixed function of (key, i).
/// A stream is addressed by (seed, stream, index), so the numbers a path sees
/// do not depend on which worker produced it. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace dirichlet
