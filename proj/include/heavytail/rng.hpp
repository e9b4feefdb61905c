#pragma once

#include <cmath>
#include <cstdint>

namespace heavytail {

// SplitMix64 finalizer; bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Counter-based uniform stream. A stream is just a key; draws are pure
// functions of (key, counter), so any draw can be addressed directly and
// replications can be split into independent substreams without shared state.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : key_(mix64(seed + 0x9e3779b97f4a7c15ULL)) {}

  Stream substream(std::uint64_t index) const {
    Stream s(*this);
    s.key_ = mix64(key_ ^ mix64(index + 0xd1b54a32d192ed03ULL));
    s.counter_ = 0;
    return s;
  }

  // Uniform on (0,1), both endpoints excluded.
  double uniform_at(std::uint64_t counter) const {
    const std::uint64_t bits = mix64(mix64(counter + 0x2545f4914f6cdd1dULL) ^ key_);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform() { return uniform_at(counter_++); }

  // Standard exponential via inversion.
  double exponential() { return -std::log(uniform()); }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace heavytail
