#include "mailcat/folder_docs.hpp"

#include <stdexcept>

#include "mailcat/sender.hpp"

namespace mailcat {

void FolderDocumentBuilder::add(const Message& msg) {
  if (!msg.folder_move) return;
  saw_any_move_ = true;
  const auto& name = *msg.folder_move;
  if (config_.system_folders.count(name)) return;
  if (config_.third_party_folders.count(name)) return;

  auto& doc = docs_[name];
  doc.name = name;
  ++doc.message_count;
  for (const auto& t : msg.subject_tokens) ++doc.token_counts[t];
  for (const auto& t : msg.body_tokens) ++doc.token_counts[t];
  ++doc.sender_moves[canonical_form(msg.sender_address)];
}

std::vector<FolderDocument> FolderDocumentBuilder::build() {
  if (!saw_any_move_)
    throw std::invalid_argument(
        "build_folder_documents: corpus has no folder moves");

  std::vector<FolderDocument> out;
  std::uint64_t kept_traffic = 0;
  for (auto& [name, doc] : docs_) {
    if (doc.message_count < config_.floor) continue;
    kept_traffic += doc.message_count;
    out.push_back(std::move(doc));
  }
  for (auto& doc : out)
    doc.traffic_weight = kept_traffic
                             ? static_cast<double>(doc.message_count) /
                                   static_cast<double>(kept_traffic)
                             : 0.0;
  return out;
}

std::vector<FolderDocument> build_folder_documents(
    const std::vector<Message>& corpus, const FolderDocConfig& config) {
  FolderDocumentBuilder builder(config);
  for (const auto& m : corpus) builder.add(m);
  return builder.build();
}

}  // namespace mailcat
