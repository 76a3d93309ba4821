#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mailcat/message.hpp"

namespace mailcat {

// Bag-of-words of every message moved into folders sharing one name,
// merged across users.
struct FolderDocument {
  std::string name;
  std::map<std::string, std::uint64_t> token_counts;  // subject+body words
  std::uint64_t message_count = 0;
  std::map<std::string, std::uint64_t> sender_moves;  // canonical -> moves
  double traffic_weight = 0;  // share of foldered traffic kept after pruning
};

struct FolderDocConfig {
  std::uint64_t floor = 1000;  // min messages per folder
  std::set<std::string> system_folders = {"trash",  "spam",    "inbox",
                                          "sent",   "drafts",  "archive",
                                          "junk",   "deleted", "outbox"};
  std::set<std::string> third_party_folders;
};

// Streaming builder; call add() per message, then build().
class FolderDocumentBuilder {
 public:
  explicit FolderDocumentBuilder(FolderDocConfig config)
      : config_(std::move(config)) {}

  void add(const Message& msg);

  // Applies exclusions, computes traffic weights over the surviving set and
  // returns documents sorted by name. Throws std::invalid_argument when the
  // corpus had no folder moves at all.
  std::vector<FolderDocument> build();

 private:
  FolderDocConfig config_;
  std::map<std::string, FolderDocument> docs_;
  bool saw_any_move_ = false;
};

std::vector<FolderDocument> build_folder_documents(
    const std::vector<Message>& corpus, const FolderDocConfig& config);

}  // namespace mailcat
