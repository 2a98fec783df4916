#include "dirichlet/rng.hpp"

namespace dirichlet {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept
    : key_(mix64(mix64(mix64(seed + kGolden) ^ (stream + 2 * kGolden)) ^ (index + 3 * kGolden))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace dirichlet
