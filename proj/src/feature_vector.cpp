#include "mailcat/feature_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mailcat {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::content: return "content";
    case Family::address: return "address";
    case Family::behavioral: return "behavioral";
    case Family::burst: return "burst";
    case Family::folder: return "folder";
  }
  throw std::logic_error("bad Family value");
}

void FeatureVector::finalize() {
  std::sort(features.begin(), features.end(),
            [](const Feature& a, const Feature& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < features.size(); ++i) {
    if (features[i].id == features[i - 1].id)
      throw std::logic_error("duplicate feature id '" + features[i].id + "'");
  }
}

const Feature* FeatureVector::find(std::string_view id) const {
  for (const auto& f : features)
    if (f.id == id) return &f;
  return nullptr;
}

FeatureVector normalize_vector(const FeatureVector& v) {
  if (v.normalized)
    throw std::invalid_argument("feature vector is already normalized");
  FeatureVector out = v;
  for (auto& f : out.features) {
    if (f.kind == ValueKind::count) f.value = std::log1p(f.value);
  }
  out.normalized = true;
  return out;
}

FeatureVector filter_families(const FeatureVector& v,
                              const std::vector<Family>& keep) {
  FeatureVector out;
  out.normalized = v.normalized;
  for (const auto& f : v.features) {
    for (Family fam : keep) {
      if (f.family == fam) {
        out.features.push_back(f);
        break;
      }
    }
  }
  return out;
}

std::string to_debug_string(const FeatureVector& v) {
  std::string s;
  for (const auto& f : v.features) {
    if (!s.empty()) s.push_back(' ');
    s += f.id;
    s.push_back(':');
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", f.value);
    s += buf;
  }
  return s;
}

}  // namespace mailcat
