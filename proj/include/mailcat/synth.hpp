#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/category.hpp"
#include "mailcat/message.hpp"

namespace mailcat {

// Knobs for the seeded synthetic corpus. Category word pools, folder name
// pools and address stems are built in; everything statistical is here.
struct SynthConfig {
  std::uint64_t seed = 42;

  // Indexed by Category enum value.
  std::array<std::uint32_t, kCategoryCount> senders_per_category = {
      1200,  // career
      1600,  // financial
      3000,  // human
      300,   // other
      1600,  // shopping
      1000,  // social
      1300,  // travel
  };

  double messages_per_sender = 25.0;  // corpus total = this * total senders
  double human_share = 0.10;          // share of messages sent by humans

  double folder_user_share = 0.10;  // fraction of recipients who folder
  double machine_move_rate = 0.55;  // move prob for a foldering recipient
  double human_move_rate = 0.06;
  double category_folder_rate = 0.8;  // else a noisy folder name

  double mixed_sender_rate = 0.02;   // machine senders with human traffic
  double mixed_message_rate = 0.10;  // human-style share for those senders

  double burst_sender_share = 0.55;  // machine senders that ever burst
  double shared_domain_share = 0.08;  // machine senders on multi-tenant domains

  std::int64_t window_start = 1388534400;  // 2014-01-01T00:00:00Z
  int window_weeks = 26;

  std::uint32_t min_machine_volume = 5;
  std::uint32_t max_machine_volume = 3000;
  std::uint32_t min_human_volume = 4;

  std::uint64_t total_senders() const {
    std::uint64_t n = 0;
    for (auto c : senders_per_category) n += c;
    return n;
  }

  // Default category mix scaled to a total sender count.
  static SynthConfig with_total_senders(std::uint64_t total,
                                        std::uint64_t seed);
};

// Per-sender and per-message truth for the synthetic corpus. Message truth
// equals the sender's category except for mixed-sender injections.
struct GroundTruth {
  std::unordered_map<std::string, Category> sender_category;  // canonical
  std::unordered_map<std::string, Category> message_category;  // by id
};

// Streams generated messages into `sink` in a deterministic order.
// Throws std::invalid_argument when any requested category has zero senders.
void generate_synthetic_corpus(const SynthConfig& config,
                               const std::function<void(const Message&)>& sink,
                               GroundTruth* truth);

std::vector<Message> generate_synthetic_corpus(const SynthConfig& config,
                                               GroundTruth* truth);

// Writes `canonical_sender<TAB>category` rows sorted by sender.
void write_ground_truth_file(const std::string& path, const GroundTruth& gt);
GroundTruth read_ground_truth_file(const std::string& path);

// Extra dump of per-message truth (`id<TAB>category`), useful when
// checking cascade decisions against mixed-sender injections.
void write_message_truth_file(const std::string& path, const GroundTruth& gt);

}  // namespace mailcat
