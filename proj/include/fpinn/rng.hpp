#pragma once

#include <cstdint>
#include <string_view>

namespace fpinn {

// Counter-based 64-bit generator built on the splitmix64 mixer. Streams are
// keyed by (seed, tag, two integer lanes), so any (seed, stream) pair yields
// the same sequence regardless of thread scheduling or call order elsewhere.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view tag,
            std::uint64_t lane_a = 0, std::uint64_t lane_b = 0);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0,1).
  double uniform01();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}
}  // namespace detail

inline RngStream::RngStream(std::uint64_t seed, std::string_view tag,
                            std::uint64_t lane_a, std::uint64_t lane_b) {
  std::uint64_t s = seed;
  std::uint64_t k = detail::splitmix64(s);
  s = k ^ detail::fnv1a(tag);
  k = detail::splitmix64(s);
  s = k ^ (lane_a * 0x9E3779B97F4A7C15ull);
  k = detail::splitmix64(s);
  s = k ^ (lane_b * 0xD1B54A32D192ED03ull);
  state_ = detail::splitmix64(s);
}

inline std::uint64_t RngStream::next_u64() { return detail::splitmix64(state_); }

inline double RngStream::uniform01() {
  // 53-bit mantissa, offset by half an ulp so 0 and 1 are never produced.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

inline std::uint64_t RngStream::below(std::uint64_t n) {
  // Rejection-free modulo is fine here; n is always tiny relative to 2^64.
  return next_u64() % n;
}

}  // namespace fpinn
