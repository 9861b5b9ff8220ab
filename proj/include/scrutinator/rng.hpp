#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace scrut {

// Deterministic 64-bit generator (splitmix64). The standard <random>
// distributions are implementation-defined, so trace synthesis uses this
// engine plus explicit range mapping to guarantee identical output bytes
// across platforms and library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound must be > 0. Modulo bias is irrelevant for
  // synthesis purposes and keeps the mapping trivially portable.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi_exclusive) {
    return lo + below(hi_exclusive - lo);
  }

  // Derive a child generator; used to give every app/event an independent
  // stream so insertions do not shift unrelated output.
  SplitMix64 fork(std::uint64_t salt) {
    return SplitMix64(next() ^ (salt * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull));
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace scrut
