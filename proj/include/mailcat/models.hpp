#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/category.hpp"
#include "mailcat/features.hpp"
#include "mailcat/logistic.hpp"
#include "mailcat/message.hpp"

namespace mailcat {

struct TrainHyper {
  SgdHyper sgd;
  int hash_bits = 18;
  std::uint64_t hash_seed = kDefaultHashSeed;
};

struct CategoryModel {
  Category category = Category::other;
  LogisticModel model;
  TrainHyper hyper;
  std::uint64_t seed = 0;
};

// The six one-vs-all models, in kModelCategories order, sharing one hashed
// feature space.
struct CategoryModelSet {
  std::vector<CategoryModel> models;

  FeatureHasher hasher() const;
  const CategoryModel& for_category(Category c) const;
};

struct TrainExample {
  FeatureVector features;  // normalized
  Category label;          // any of the 7, "other" trains as negatives only
};

// Trains the six models by SGD on log-loss over hashed features. Negative
// examples are every sender with a different label, equal weights.
// Deterministic for fixed seed; throws std::invalid_argument naming the
// category when one has no positive or no negative example. `threads`
// caps the per-category parallelism (0 = hardware default).
CategoryModelSet train_one_vs_all(const std::vector<TrainExample>& train,
                                  const TrainHyper& hyper, std::uint64_t seed,
                                  unsigned threads = 0);

struct ScoredPrediction {
  Category category = Category::other;
  double confidence = 0.0;
  std::array<double, 6> scores{};  // kModelCategories order
};

// One-vs-all merge: positive answer = probability > 0.5; highest positive
// wins (ties break by category order). With no positive answer the result
// is `other` with the lowest of the six scores.
ScoredPrediction merge_one_vs_all(const std::array<double, 6>& scores);

ScoredPrediction predict_category(const CategoryModelSet& models,
                                  const FeatureVector& v);

// ---- sender table --------------------------------------------------------

struct SenderTable {
  std::unordered_map<std::string, std::pair<Category, double>> entries;
  std::int64_t built_at = 0;  // max message timestamp seen at build time
  double cutoff = 0.9;

  std::optional<std::pair<Category, double>> lookup(
      const std::string& canonical) const {
    const auto it = entries.find(canonical);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }
};

// Scores every sender and keeps those with confidence >= cutoff.
// Rebuilding with identical inputs is byte-identical on disk.
SenderTable build_sender_table(const CategoryModelSet& models,
                               const SenderAggregateMap& senders,
                               const VocabularySet& vocabs,
                               const CommercialKeywordList& keywords,
                               double cutoff, const BurstConfig& bursts = {});

// ---- message-level models --------------------------------------------------

// Samples up to `per_sender` messages from each labeled sender (label
// `machine` is treated as `other`), extracts message-level features only
// and trains one-vs-all models. Senders without messages are skipped with
// a warning on stderr.
CategoryModelSet train_message_models(
    const std::unordered_map<std::string, Category>& labeled,
    const std::vector<Message>& corpus, int per_sender,
    const VocabularySet& vocabs, const CommercialKeywordList& keywords,
    const TrainHyper& hyper, std::uint64_t seed, unsigned threads = 0);

// ---- feature importance ----------------------------------------------------

struct ImportanceScore {
  std::string feature;
  std::uint64_t n = 0;       // examples
  std::uint64_t n_pos = 0;   // positive examples
  std::uint64_t n_k = 0;     // examples with the feature
  std::uint64_t n_k_pos = 0; // positive examples with the feature
  double score = 0.0;        // n_k * ((n_k_pos/n_k) / (n_pos/n) - 1)
};

// Scores the positive-weight features of one model over a labeled dataset
// (true = the model's category) and returns the top_n by score. Throws
// std::invalid_argument when the dataset has no positive example.
std::vector<ImportanceScore> feature_importance(
    const CategoryModel& model,
    const std::vector<std::pair<FeatureVector, bool>>& dataset,
    std::size_t top_n = 1000);

// ---- files -----------------------------------------------------------------

void write_model_file(const std::string& path, const CategoryModel& model);
CategoryModel read_model_file(const std::string& path);
void write_model_set(const std::string& dir, const CategoryModelSet& models);
CategoryModelSet read_model_set(const std::string& dir);

void write_sender_table_file(const std::string& path, const SenderTable& table);
SenderTable read_sender_table_file(const std::string& path);

void write_importance_file(const std::string& path,
                           const std::vector<ImportanceScore>& scores);

}  // namespace mailcat
