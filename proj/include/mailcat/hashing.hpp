#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mailcat/feature_vector.hpp"

namespace mailcat {

inline constexpr std::uint64_t kDefaultHashSeed = 0x9e3779b97f4a7c15ULL;

// Signed feature hashing over 2^bits buckets. FNV-1a keeps the mapping
// stable across platforms and runs for a fixed (bits, seed).
struct FeatureHasher {
  int bits = 18;
  std::uint64_t seed = kDefaultHashSeed;

  std::uint64_t raw_hash(std::string_view id) const {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : id) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }
  std::uint32_t buckets() const { return 1u << bits; }
  std::uint32_t index(std::string_view id) const {
    return static_cast<std::uint32_t>(raw_hash(id) & (buckets() - 1));
  }
  double sign(std::string_view id) const {
    return (raw_hash(id) >> 63) ? -1.0 : 1.0;
  }
};

// Sparse hashed example: bucket indices strictly increasing, collision
// values summed.
struct HashedVector {
  int bits = 18;
  std::vector<std::pair<std::uint32_t, double>> entries;
};

HashedVector hash_vector(const FeatureVector& v, const FeatureHasher& hasher);

}  // namespace mailcat
