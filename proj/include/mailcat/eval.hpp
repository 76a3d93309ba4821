#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/cascade.hpp"
#include "mailcat/category.hpp"
#include "mailcat/features.hpp"
#include "mailcat/metrics.hpp"
#include "mailcat/models.hpp"

namespace mailcat {

// Domain-disjoint split assignments, one per repeat.
struct SplitPlan {
  double fraction = 0.65;
  int repeats = 5;
  std::uint64_t seed = 0;
  std::vector<std::set<std::string>> train_domains;  // per repeat

  bool in_train(int repeat, const std::string& domain) const {
    return train_domains[static_cast<std::size_t>(repeat)].count(domain) > 0;
  }
};

// Random domain assignment per repeat, filling the train side to the
// sender-count target. All senders of one domain land on one side.
// Throws std::invalid_argument when fraction is outside (0,1).
SplitPlan split_by_domain(const std::vector<std::string>& canonical_senders,
                          double fraction, int repeats, std::uint64_t seed);

// ---- feature subsets for the ablation ---------------------------------------

struct FeatureSubset {
  std::string name;
  bool content_subject = true;
  bool content_body = true;
  bool content_stats = true;  // lengths and url counts
  bool address = true;
  bool behavioral = true;
  bool burst = true;

  // all | content | address | behavioral | no-burst | no-body.
  // Throws std::invalid_argument for unknown names.
  static FeatureSubset parse(const std::string& name);
  static std::vector<FeatureSubset> standard_columns();
};

// Folder features are always dropped here: subcategory labels derive from
// folder data, so keeping them would leak the label.
FeatureVector apply_subset(const FeatureVector& v, const FeatureSubset& subset);

// ---- sender-level AUC evaluation --------------------------------------------

struct AucTable {
  std::vector<std::string> columns;
  // mean AUC over repeats, row per model category
  std::map<Category, std::vector<double>> rows;
};

struct EvalOptions {
  TrainHyper hyper;
  BurstConfig bursts;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

AucTable run_ablation(
    const std::unordered_map<std::string, Category>& labeled,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords,
    const std::vector<FeatureSubset>& subsets, const SplitPlan& plan,
    const EvalOptions& options);

// Per-category averaged curves and AUC for one subset (default "all").
struct CategoryCurves {
  std::map<Category, CurveReport> per_repeat_merged;  // averaged curve + mean auc
  std::map<Category, double> mean_auc;
};

CategoryCurves evaluate_curves(
    const std::unordered_map<std::string, Category>& labeled,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords, const SplitPlan& plan,
    const EvalOptions& options,
    const FeatureSubset& subset = FeatureSubset::parse("all"));

// ---- human/machine test set --------------------------------------------------

struct TestsetConfig {
  std::size_t n = 600;
  double monthly_volume_cutoff = 100000;  // mean messages per month
  std::uint64_t never_replied_sent_cutoff = 1000;
  std::uint64_t seed = 0;
};

// Excludes obvious machine senders (monthly volume above the cutoff, or
// never replied to despite heavy sending), samples n of the remaining
// senders uniformly and returns one message per sampled sender. Throws
// std::invalid_argument (with the eligible count) when fewer than n
// senders survive the exclusions.
std::vector<Message> build_human_machine_testset(
    const std::vector<Message>& corpus, const SenderAggregateMap& aggregates,
    const TestsetConfig& config);

// ---- traffic coverage ---------------------------------------------------------

// share(c) = decisions with category c / total; includes `other`.
// Throws std::invalid_argument on an empty batch.
std::map<Category, double> coverage_report(
    const std::vector<CascadeDecision>& decisions);

// ---- descriptive human-vs-machine statistics ----------------------------------

struct ClassStats {
  std::uint64_t senders = 0;
  std::vector<double> read_ratio_hist;  // 10 bins over [0,1]
  double unsubscribe_presence = 0;      // share of senders
  double common_name_presence = 0;
  double burst100_presence = 0;
  double avg_subject_over_30 = 0;
  double avg_body_over_300 = 0;
  double avg_urls_over_3 = 0;
};

struct HumanMachineStats {
  ClassStats human;
  ClassStats machine;
};

HumanMachineStats human_machine_stats(
    const SenderAggregateMap& aggregates,
    const std::unordered_map<std::string, Category>& labels,
    const std::set<std::string>& first_names);

// ---- report files --------------------------------------------------------------

void write_auc_table_file(const std::string& path, const AucTable& table);
void write_coverage_report_file(const std::string& path,
                                const std::map<Category, double>& shares);
void write_human_machine_stats_file(const std::string& path,
                                    const HumanMachineStats& stats);

}  // namespace mailcat
