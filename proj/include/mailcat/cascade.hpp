#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/category.hpp"
#include "mailcat/features.hpp"
#include "mailcat/message.hpp"
#include "mailcat/models.hpp"

namespace mailcat {

enum class Stage : std::uint8_t { lightweight = 0, sender_table, heavyweight };

std::string_view to_string(Stage s);

struct LightweightRules {
  // canonical sender -> category, built from the top senders by volume
  std::unordered_map<std::string, Category> whitelist;
  bool reply_forward_human = true;
};

struct CascadeDecision {
  std::string id;
  Category category = Category::other;
  double confidence = 0.0;
  Stage stage = Stage::heavyweight;
};

// Takes the n_top senders by outbound volume and whitelists those whose
// sender-table confidence reaches `consistency` (in (0.5, 1]).
LightweightRules build_lightweight_rules(const SenderAggregateMap& senders,
                                         const SenderTable& table,
                                         std::size_t n_top,
                                         double consistency = 0.99);

// The three-stage online classifier. Stage 1: reply/forward messages are
// human, then the whitelist; stage 2: sender-table lookup; stage 3:
// message-level models, where `other` is a decision, never an abstention.
// Earlier stages short-circuit later ones.
CascadeDecision classify_message(const Message& msg,
                                 const LightweightRules& rules,
                                 const SenderTable& table,
                                 const CategoryModelSet& msg_models,
                                 const VocabularySet& vocabs,
                                 const CommercialKeywordList& keywords);

struct CascadeSummary {
  std::uint64_t total = 0;
  std::array<std::uint64_t, 3> by_stage = {};  // indexed by Stage
  double elapsed_seconds = 0.0;

  double stage_share(Stage s) const {
    return total ? static_cast<double>(by_stage[static_cast<std::size_t>(s)]) /
                       static_cast<double>(total)
                 : 0.0;
  }
  double throughput() const {
    return elapsed_seconds > 0 ? static_cast<double>(total) / elapsed_seconds
                               : 0.0;
  }
};

std::vector<CascadeDecision> classify_batch(
    const std::vector<Message>& messages, const LightweightRules& rules,
    const SenderTable& table, const CategoryModelSet& msg_models,
    const VocabularySet& vocabs, const CommercialKeywordList& keywords,
    CascadeSummary* summary = nullptr);

void write_decisions_file(const std::string& path,
                          const std::vector<CascadeDecision>& decisions);
std::vector<CascadeDecision> read_decisions_file(const std::string& path);

// Machine-readable run summary (JSON: totals, per-stage counts and shares,
// throughput).
void write_cascade_summary(const std::string& path,
                           const CascadeSummary& summary);

}  // namespace mailcat
