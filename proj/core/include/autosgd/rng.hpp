#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace autosgd {

/// Counter-based random stream. Each value is a hash of (seed, stream_id,
/// counter), so replaying a stream is exact and independent streams can be
/// split off without coordination: a child stream hashes the parent id with a
/// label. One stream has one owner; never share an instance across threads.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id), key_(derive_key(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  RngStream child(std::uint64_t label) const {
    return RngStream(seed_, mix(stream_id_ + golden * mix(label + golden)));
  }
  RngStream child(std::string_view label) const { return child(hash_label(label)); }

  std::uint64_t next_u64() { return mix(key_ + golden * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes exactly two raw draws.
  double next_normal() {
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform index in {0, ..., n-1}; assumes n is tiny relative to 2^64.
  std::uint64_t next_index(std::uint64_t n) { return next_u64() % n; }

  static std::uint64_t hash_label(std::string_view label) {
    // FNV-1a, then finalized through the mixer.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return mix(h);
  }

 private:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

  // SplitMix64 finalizer (Stafford mix 13).
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t id) {
    return mix(mix(seed + golden) ^ mix(id + 0xd1b54a32d192ed03ULL));
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t key_ = derive_key(0, 0);
};

}  // namespace autosgd
