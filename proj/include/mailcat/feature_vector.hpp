#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mailcat {

// Feature families. Each feature id carries its family prefix, so ids
// partition across families by construction:
//   c:s:<term> c:b:<term> c:len:* c:urls*   content
//   a:dom:* a:name:* a:kw:* a:rand          address
//   b:*                                     behavioral
//   t:gt<X>                                 burst (temporal)
//   f:<folder>                              folder
enum class Family : std::uint8_t {
  content = 0,
  address,
  behavioral,
  burst,
  folder,
};

std::string_view to_string(Family f);

// Count values get log(1+x) at normalization time; ratio values are
// already in [0,1] and pass through.
enum class ValueKind : std::uint8_t { count = 0, ratio };

struct Feature {
  std::string id;
  Family family;
  ValueKind kind;
  double value;
};

struct FeatureVector {
  std::vector<Feature> features;  // sorted by id, unique
  bool normalized = false;

  void add(Family family, ValueKind kind, std::string id, double value) {
    features.push_back(Feature{std::move(id), family, kind, value});
  }
  // Sorts by id; throws std::logic_error on duplicate ids.
  void finalize();

  const Feature* find(std::string_view id) const;
};

// Returns the log(1+x)-normalized copy; throws std::invalid_argument if the
// vector is already normalized.
FeatureVector normalize_vector(const FeatureVector& v);

// Keeps only the listed families (normalization flag preserved).
FeatureVector filter_families(const FeatureVector& v,
                              const std::vector<Family>& keep);

// Debug dump: one `id:value` pair per feature, space separated.
std::string to_debug_string(const FeatureVector& v);

}  // namespace mailcat
