#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailcat/message.hpp"

namespace mailcat {

struct LengthStats {
  double sum = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;

  void add(double v) {
    sum += v;
    if (v < min) min = v;
    if (v > max) max = v;
    ++count;
  }
  void merge(const LengthStats& o) {
    sum += o.sum;
    if (o.min < min) min = o.min;
    if (o.max > max) max = o.max;
    count += o.count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0; }
};

// Recipient-count histogram buckets: 1, 2-5, 6-20, 21-100, >100.
inline constexpr std::size_t kRecipientBuckets = 5;
std::size_t recipient_bucket(std::uint32_t recipients);

// Per-sender rollup keyed by canonical sender. All fields merge as a
// commutative monoid so aggregation is order-insensitive and partitionable.
struct SenderAggregate {
  std::string canonical;
  std::string domain;

  std::uint64_t message_count = 0;  // outbound total (delivered)
  std::uint64_t out_reply = 0;
  std::uint64_t out_forward = 0;
  std::array<std::uint64_t, kRecipientBuckets> recipient_hist = {};

  std::map<std::string, std::uint64_t> subject_token_counts;
  std::map<std::string, std::uint64_t> body_token_counts;
  LengthStats subject_len, body_len, url_count;

  std::uint64_t read = 0, deleted = 0, replied = 0, forwarded = 0,
                spam_vote = 0;
  std::map<std::string, std::uint64_t> folder_moves;
  std::uint64_t unsubscribe_msgs = 0;  // messages whose body says unsubscribe

  std::map<std::int64_t, std::uint32_t> hourly_counts;  // hour bucket -> sent
  std::int64_t first_ts = std::numeric_limits<std::int64_t>::max();
  std::int64_t last_ts = std::numeric_limits<std::int64_t>::min();

  void add(const Message& msg);
  void merge(const SenderAggregate& other);

  // Incoming traffic is not observable in the corpus format (records carry
  // no recipient identity); replies and forwards received are derived from
  // recipient actions on this sender's own messages.
  std::uint64_t inbound_reply() const { return replied; }
  std::uint64_t inbound_forward() const { return forwarded; }
  std::uint64_t inbound_total() const { return replied + forwarded; }

  double read_ratio() const {
    return message_count ? static_cast<double>(read) / message_count : 0.0;
  }

  // Mean outbound volume per calendar week/month touched by [first_ts,
  // last_ts]. Derived so that merging stays exact.
  double weekly_mean() const;
  double monthly_mean() const;
  std::uint32_t max_hourly() const;
};

using SenderAggregateMap = std::unordered_map<std::string, SenderAggregate>;

struct DomainAggregate {
  std::string domain;
  std::vector<std::string> senders;  // canonical, sorted
  SenderAggregate merged;            // canonical field holds the domain key
};

using DomainAggregateMap = std::unordered_map<std::string, DomainAggregate>;

SenderAggregateMap aggregate_by_sender(const std::vector<Message>& messages);

// Streaming variant used by the CLI.
class SenderAggregator {
 public:
  void add(const Message& msg);
  SenderAggregateMap take() { return std::move(aggregates_); }
  const SenderAggregateMap& aggregates() const { return aggregates_; }

 private:
  SenderAggregateMap aggregates_;
};

// Groups by domain part; throws std::invalid_argument on empty input.
DomainAggregateMap aggregate_by_domain(const SenderAggregateMap& senders);

// Drops senders with fewer than `min_messages` messages (the "filtered"
// sender set).
SenderAggregateMap filter_aggregates(const SenderAggregateMap& senders,
                                     std::uint64_t min_messages);

// Snapshot file: one row per sender, sorted by canonical key.
void write_aggregates_file(const std::string& path,
                           const SenderAggregateMap& aggregates);
SenderAggregateMap read_aggregates_file(const std::string& path);

}  // namespace mailcat
