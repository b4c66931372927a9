#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace assoc60 {

// Independent sub-streams of one master seed. The engine for
// (master, index, purpose) is seeded with
//   splitmix64(master ^ splitmix64(index ^ splitmix64(purpose)))
// so slot i's fading draws never depend on how many draws slot i-1 used, or on
// the order in which slots are evaluated.
enum class StreamPurpose : std::uint64_t {
  kTopology = 1,
  kFading = 2,
  kDemand = 3,
  kRandomPolicy = 4,
  kInstance = 5,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t index,
                            StreamPurpose purpose);

// Uniform on [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng);
// Uniform on (0, 1].
double uniform_open_closed(std::mt19937_64& rng);
// Unit-mean exponential, strictly positive.
double exponential1(std::mt19937_64& rng);
// Uniform integer in [0, n). n must be positive.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

}  // namespace assoc60
