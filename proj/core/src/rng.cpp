#include "assoc60/rng.hpp"

#include <cmath>

#include "assoc60/error.hpp"

namespace assoc60 {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t index,
                            StreamPurpose purpose) {
  const auto p = static_cast<std::uint64_t>(purpose);
  return std::mt19937_64(splitmix64(master ^ splitmix64(index ^ splitmix64(p))));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double exponential1(std::mt19937_64& rng) {
  // -log(U) with U in (0, 1]; U == 1 gives exactly 0, so resample.
  double e = 0.0;
  while (!(e > 0.0)) e = -std::log(uniform_open_closed(rng));
  return e;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw DomainError("uniform_index needs n > 0");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return static_cast<std::size_t>(r % range);
}

}  // namespace assoc60
