#pragma once

#include <cstdint>

namespace csp {

// splitmix64 (Steele, Lea, Flood 2014). One 64-bit state word, the published
// constants, identical output on every platform. Each instance is
// single-consumer; parallel work derives child seeds via child_seed().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1): top 53 bits over 2^53.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Child seed for independent streams: one splitmix64 step on
  // (parent_seed XOR stream_index).
  static std::uint64_t child_seed(std::uint64_t parent_seed,
                                  std::uint64_t stream_index) {
    return RngStream(parent_seed ^ stream_index).next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace csp
