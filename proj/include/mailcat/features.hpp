#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/feature_vector.hpp"
#include "mailcat/message.hpp"
#include "mailcat/vocab.hpp"

namespace mailcat {

// Commercial keywords matched as substrings of the sender address.
struct CommercialKeywordList {
  std::vector<std::string> keywords;  // lowercase, unique, sorted

  static CommercialKeywordList load(const std::string& path);
  static CommercialKeywordList from_words(std::vector<std::string> words);

  std::vector<std::string> matches(const std::string& address) const;
};

// Burst ladder; indicator X fires when some hour strictly exceeds X sends.
struct BurstConfig {
  std::vector<std::uint32_t> ladder = {10, 60, 80, 100, 120};
};

std::vector<bool> extract_burst_indicators(
    const std::vector<std::uint32_t>& hourly_counts,
    const BurstConfig& config = {});

// Message-level features: content plus address features of the literal
// address string. Unknown tokens are dropped silently.
FeatureVector extract_message_features(const Message& msg,
                                       const VocabularySet& vocabs,
                                       const CommercialKeywordList& keywords);

// Sender-level features over the full aggregate: content totals and
// length stats, outbound/inbound volumes, action ratios, burst indicators,
// folder move counts and address features of the canonical sender.
// Throws std::invalid_argument on a zero-message aggregate.
FeatureVector extract_sender_features(const SenderAggregate& agg,
                                      const VocabularySet& vocabs,
                                      const CommercialKeywordList& keywords,
                                      const BurstConfig& bursts = {});

}  // namespace mailcat
