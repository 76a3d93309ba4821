#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/category.hpp"
#include "mailcat/features.hpp"
#include "mailcat/models.hpp"
#include "mailcat/sender.hpp"

namespace mailcat {

struct LabeledSender {
  std::string canonical;
  Label label = Label::other;
  LabelSource source = LabelSource::manual;
  double confidence = 1.0;
};

// folder name -> machine category label (the human category is never
// folder-labeled).
using LabeledFolderMap = std::map<std::string, Category>;

LabeledFolderMap load_labeled_folders(const std::string& path);

// Folder-based majority voting. Sums move counts by folder label, picks the
// winning label (ties break alphabetically) and returns it only when the
// winner's votes strictly exceed tau_v and the number of folders voting for
// it strictly exceeds tau_f.
std::optional<Category> majority_vote_label(
    const std::map<std::string, std::uint64_t>& sender_moves,
    const LabeledFolderMap& labeled_folders, std::uint64_t tau_v = 50,
    std::uint64_t tau_f = 2);

// LDA soft voting: per-topic score is the move-weighted sum of folder
// mixtures, renormalized over topics. Returns the argmax topic's category
// and score when the score strictly exceeds the threshold.
std::optional<std::pair<Category, double>> lda_soft_vote(
    const std::map<std::string, std::uint64_t>& sender_moves,
    const std::map<std::string, Eigen::VectorXd>& mixtures,
    const std::vector<Category>& topic_labels, double threshold = 0.8);

// ---- human/machine heuristics ----------------------------------------------

struct NameLists {
  std::set<std::string> first_names;
  std::set<std::string> reserved;
};

struct HeuristicConfig {
  double unsubscribe_ratio = 0.5;  // fraction of bodies saying unsubscribe
  double spam_vote_ratio = 0.05;   // strict cutoff
  std::vector<std::string> human_name_regexes;  // extra patterns, optional
};

enum class HumanMachine : std::uint8_t { human, machine };

// Machine rules fire first (reserved name words, repeated unsubscribe,
// spam votes); the human rule is first.last with a known first name or a
// configured regex. No rule -> no answer.
std::optional<HumanMachine> heuristic_human_machine(
    const SenderAggregate& agg, const CanonicalSender& canonical,
    const NameLists& names, const HeuristicConfig& config = {});

// ---- co-training ------------------------------------------------------------

struct CoTrainConfig {
  std::vector<Family> view_a = {Family::address};
  std::vector<Family> view_b = {Family::behavioral, Family::burst};
  int rounds = 4;
  double conf_threshold = 0.9;
  TrainHyper hyper;
  std::uint64_t seed = 1;
};

// Alternating two-view self-training for human-vs-machine. Adds unlabeled
// senders whose class confidence strictly exceeds the threshold, tagged
// source=cotrain; seed labels are never changed. The labeled pool only
// grows. Throws std::invalid_argument when a view has no feature families.
std::vector<LabeledSender> co_train_expand(
    const std::vector<LabeledSender>& seed_set,
    const SenderAggregateMap& unlabeled, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords, const CoTrainConfig& config);

// ---- merging ----------------------------------------------------------------

inline const std::vector<LabelSource> kDefaultPrecedence = {
    LabelSource::manual, LabelSource::folder_vote, LabelSource::lda_vote,
    LabelSource::heuristic, LabelSource::cotrain};

struct LabelConflict {
  std::string canonical;
  std::vector<std::pair<Label, LabelSource>> claims;
  Label resolution = Label::other;
};

struct MergedLabels {
  std::vector<LabeledSender> merged;  // sorted by canonical
  std::vector<LabelConflict> conflicts;
};

// Identical labels merge with max confidence. A coarse `machine` claim
// refined by a machine subcategory is not a conflict; the subcategory
// wins. Genuinely different labels go to the conflict list and resolve by
// source precedence (then confidence, then label order). Order-insensitive
// in both the set list and set contents.
MergedLabels merge_labeled_sets(
    const std::vector<std::vector<LabeledSender>>& sets,
    const std::vector<LabelSource>& precedence = kDefaultPrecedence);

// Final training labels: senders still coarse `machine` become `other`.
std::unordered_map<std::string, Category> finalize_labels(
    const std::vector<LabeledSender>& merged);

// ---- files ------------------------------------------------------------------

void write_labeled_senders_file(const std::string& path,
                                const std::vector<LabeledSender>& senders);
std::vector<LabeledSender> read_labeled_senders_file(const std::string& path);
void write_conflicts_file(const std::string& path,
                          const std::vector<LabelConflict>& conflicts);

}  // namespace mailcat
