#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mailcat/aggregate.hpp"
#include "mailcat/message.hpp"

namespace mailcat {

enum class VocabKind : std::uint8_t { content, address_substring, folder_name };

std::string_view to_string(VocabKind k);

struct Vocabulary {
  VocabKind kind = VocabKind::content;
  std::map<std::string, std::uint32_t> index;          // term -> dense index
  std::map<std::string, std::uint64_t> sender_counts;  // included terms
  struct Exclusion {
    std::string term;
    std::string reason;  // stop_word | top_frequent | min_senders
  };
  std::vector<Exclusion> exclusions;

  bool contains(const std::string& term) const { return index.count(term); }
  std::size_t size() const { return index.size(); }
};

struct VocabularySet {
  Vocabulary content;
  Vocabulary address;
  Vocabulary folder;
};

// Pruning thresholds. Defaults are the documented full-scale values; desk
// runs configure smaller floors.
struct VocabConfig {
  std::uint32_t content_top = 400;
  std::uint64_t content_min_senders = 100;
  std::uint32_t address_top = 800;
  std::uint64_t address_min_senders = 100;
  std::uint32_t folder_top = 50;
  std::uint64_t folder_min_senders = 100;
  std::set<std::string> stop_words;
};

std::set<std::string> load_word_list(const std::string& path);

// Distinct-sender counting then pruning. Order-insensitive: the result
// depends only on the aggregate contents. Throws std::invalid_argument on
// an empty corpus.
VocabularySet build_vocabularies(const SenderAggregateMap& aggregates,
                                 const VocabConfig& config);
VocabularySet build_vocabularies(const std::vector<Message>& corpus,
                                 const VocabConfig& config);

// Vocabulary files: `term  index  sender_count` rows plus a sibling
// exclusion log `term  reason`.
void write_vocabulary_file(const std::string& path, const Vocabulary& vocab);
Vocabulary read_vocabulary_file(const std::string& path, VocabKind kind);
void write_exclusions_file(const std::string& path, const Vocabulary& vocab);

}  // namespace mailcat
