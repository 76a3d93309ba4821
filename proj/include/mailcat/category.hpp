#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mailcat {

// Final categories, in alphabetical order. The enum order is also the
// documented tie-break order for one-vs-all prediction.
enum class Category : std::uint8_t {
  career = 0,
  financial,
  human,
  other,
  shopping,
  social,
  travel,
};

inline constexpr std::size_t kCategoryCount = 7;

// The six categories with a trained one-vs-all model ("other" is the
// all-negative outcome, never a model).
inline constexpr std::array<Category, 6> kModelCategories = {
    Category::career,   Category::financial, Category::human,
    Category::shopping, Category::social,    Category::travel};

// The five machine subcategories discovered by topic analysis.
inline constexpr std::array<Category, 5> kMachineSubcategories = {
    Category::career, Category::financial, Category::shopping,
    Category::social, Category::travel};

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::career: return "career";
    case Category::financial: return "financial";
    case Category::human: return "human";
    case Category::other: return "other";
    case Category::shopping: return "shopping";
    case Category::social: return "social";
    case Category::travel: return "travel";
  }
  throw std::logic_error("bad Category value");
}

inline std::optional<Category> parse_category(std::string_view s) {
  if (s == "career") return Category::career;
  if (s == "financial" || s == "finance") return Category::financial;
  if (s == "human") return Category::human;
  if (s == "other") return Category::other;
  if (s == "shopping") return Category::shopping;
  if (s == "social") return Category::social;
  if (s == "travel") return Category::travel;
  return std::nullopt;
}

// Sender labels produced by the labeling pipeline. `machine` is a coarse
// label that only exists before merging: heuristics can tell machine from
// human without knowing the subcategory. Merging refines machine to a
// subcategory when one is available; senders still coarse after the final
// merge are mapped to Category::other.
enum class Label : std::uint8_t {
  career = 0,
  financial,
  human,
  other,
  shopping,
  social,
  travel,
  machine,
};

inline constexpr std::size_t kLabelCount = 8;

inline Label to_label(Category c) { return static_cast<Label>(c); }

// Valid only for non-machine labels.
inline Category to_category(Label l) {
  if (l == Label::machine)
    throw std::invalid_argument("coarse machine label has no category");
  return static_cast<Category>(l);
}

inline bool is_machine_subcategory(Label l) {
  return l != Label::human && l != Label::machine;
}

inline std::string_view to_string(Label l) {
  if (l == Label::machine) return "machine";
  return to_string(static_cast<Category>(l));
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "machine") return Label::machine;
  if (auto c = parse_category(s)) return to_label(*c);
  return std::nullopt;
}

// Sources of sender labels, ordered by default merge precedence
// (manual strongest).
enum class LabelSource : std::uint8_t {
  manual = 0,
  folder_vote,
  lda_vote,
  heuristic,
  cotrain,
};

inline std::string_view to_string(LabelSource s) {
  switch (s) {
    case LabelSource::manual: return "manual";
    case LabelSource::folder_vote: return "folder_vote";
    case LabelSource::lda_vote: return "lda_vote";
    case LabelSource::heuristic: return "heuristic";
    case LabelSource::cotrain: return "cotrain";
  }
  throw std::logic_error("bad LabelSource value");
}

inline std::optional<LabelSource> parse_label_source(std::string_view s) {
  if (s == "manual") return LabelSource::manual;
  if (s == "folder_vote") return LabelSource::folder_vote;
  if (s == "lda_vote") return LabelSource::lda_vote;
  if (s == "heuristic") return LabelSource::heuristic;
  if (s == "cotrain") return LabelSource::cotrain;
  return std::nullopt;
}

}  // namespace mailcat
