#include "mailcat/aggregate.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Howard Hinnant's civil-from-days; returns year*12 + month0.
std::int64_t month_index(std::int64_t ts) {
  std::int64_t z = floor_div(ts, 86400);
  z += 719468;
  const std::int64_t era = floor_div(z, 146097);
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe =
      (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = yoe + era * 400;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t year = m <= 2 ? y + 1 : y;
  return year * 12 + (m - 1);
}

std::int64_t week_index(std::int64_t ts) { return floor_div(ts, 604800); }

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::size_t recipient_bucket(std::uint32_t recipients) {
  if (recipients <= 1) return 0;
  if (recipients <= 5) return 1;
  if (recipients <= 20) return 2;
  if (recipients <= 100) return 3;
  return 4;
}

void SenderAggregate::add(const Message& msg) {
  ++message_count;
  if (msg.is_reply) ++out_reply;
  if (msg.is_forward) ++out_forward;
  ++recipient_hist[recipient_bucket(msg.recipient_count)];

  for (const auto& t : msg.subject_tokens) ++subject_token_counts[t];
  bool has_unsub = false;
  for (const auto& t : msg.body_tokens) {
    ++body_token_counts[t];
    if (t == "unsubscribe") has_unsub = true;
  }
  if (has_unsub) ++unsubscribe_msgs;

  subject_len.add(static_cast<double>(msg.subject_len));
  body_len.add(static_cast<double>(msg.body_len));
  url_count.add(static_cast<double>(msg.url_count));

  if (msg.actions.has(Action::read)) ++read;
  if (msg.actions.has(Action::deleted)) ++deleted;
  if (msg.actions.has(Action::replied)) ++replied;
  if (msg.actions.has(Action::forwarded)) ++forwarded;
  if (msg.actions.has(Action::spam_vote)) ++spam_vote;
  if (msg.folder_move) ++folder_moves[*msg.folder_move];

  ++hourly_counts[floor_div(msg.timestamp, 3600)];
  if (msg.timestamp < first_ts) first_ts = msg.timestamp;
  if (msg.timestamp > last_ts) last_ts = msg.timestamp;
}

void SenderAggregate::merge(const SenderAggregate& o) {
  message_count += o.message_count;
  out_reply += o.out_reply;
  out_forward += o.out_forward;
  for (std::size_t i = 0; i < kRecipientBuckets; ++i)
    recipient_hist[i] += o.recipient_hist[i];
  for (const auto& [t, c] : o.subject_token_counts)
    subject_token_counts[t] += c;
  for (const auto& [t, c] : o.body_token_counts) body_token_counts[t] += c;
  subject_len.merge(o.subject_len);
  body_len.merge(o.body_len);
  url_count.merge(o.url_count);
  read += o.read;
  deleted += o.deleted;
  replied += o.replied;
  forwarded += o.forwarded;
  spam_vote += o.spam_vote;
  for (const auto& [f, c] : o.folder_moves) folder_moves[f] += c;
  unsubscribe_msgs += o.unsubscribe_msgs;
  for (const auto& [h, c] : o.hourly_counts) hourly_counts[h] += c;
  if (o.first_ts < first_ts) first_ts = o.first_ts;
  if (o.last_ts > last_ts) last_ts = o.last_ts;
}

double SenderAggregate::weekly_mean() const {
  if (message_count == 0) return 0;
  const auto weeks = week_index(last_ts) - week_index(first_ts) + 1;
  return static_cast<double>(message_count) / static_cast<double>(weeks);
}

double SenderAggregate::monthly_mean() const {
  if (message_count == 0) return 0;
  const auto months = month_index(last_ts) - month_index(first_ts) + 1;
  return static_cast<double>(message_count) / static_cast<double>(months);
}

std::uint32_t SenderAggregate::max_hourly() const {
  std::uint32_t best = 0;
  for (const auto& [h, c] : hourly_counts) best = std::max(best, c);
  return best;
}

void SenderAggregator::add(const Message& msg) {
  const auto canon = canonicalize_sender(msg.sender_address);
  auto [it, inserted] = aggregates_.try_emplace(canon.canonical);
  if (inserted) {
    it->second.canonical = canon.canonical;
    it->second.domain = canon.domain_part;
  }
  it->second.add(msg);
}

SenderAggregateMap aggregate_by_sender(const std::vector<Message>& messages) {
  SenderAggregator agg;
  for (const auto& m : messages) agg.add(m);
  return agg.take();
}

DomainAggregateMap aggregate_by_domain(const SenderAggregateMap& senders) {
  if (senders.empty())
    throw std::invalid_argument("aggregate_by_domain: empty sender set");
  DomainAggregateMap out;
  for (const auto& [canonical, agg] : senders) {
    auto [it, inserted] = out.try_emplace(agg.domain);
    auto& dom = it->second;
    if (inserted) {
      dom.domain = agg.domain;
      dom.merged.canonical = agg.domain;
      dom.merged.domain = agg.domain;
    }
    dom.senders.push_back(canonical);
    dom.merged.merge(agg);
  }
  for (auto& [d, dom] : out) std::sort(dom.senders.begin(), dom.senders.end());
  return out;
}

SenderAggregateMap filter_aggregates(const SenderAggregateMap& senders,
                                     std::uint64_t min_messages) {
  SenderAggregateMap out;
  for (const auto& [canonical, agg] : senders)
    if (agg.message_count >= min_messages) out.emplace(canonical, agg);
  return out;
}

// Snapshot format, one block per sender:
//   S <canonical> <domain> <message_count> <out_reply> <out_forward>
//     <hist0..hist4> <subj sum,min,max,count> <body ...> <url ...>
//     <read> <deleted> <replied> <forwarded> <spam_vote> <unsub_msgs>
//     <first_ts> <last_ts>
//   TS <term> <count>    (one per subject token)
//   TB <term> <count>    (one per body token)
//   F <folder> <count>   (one per folder)
//   H <hour> <count>     (one per active hour)
// Fields are tab-separated and escaped; blocks are sorted by canonical key.
void write_aggregates_file(const std::string& path,
                           const SenderAggregateMap& aggregates) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write aggregates: " + path);
  std::vector<const SenderAggregate*> rows;
  rows.reserve(aggregates.size());
  for (const auto& [k, v] : aggregates) rows.push_back(&v);
  std::sort(rows.begin(), rows.end(),
            [](auto* a, auto* b) { return a->canonical < b->canonical; });

  auto write_stats = [&](const LengthStats& s) {
    out << '\t' << fmt_double(s.sum) << ',' << fmt_double(s.min) << ','
        << fmt_double(s.max) << ',' << s.count;
  };
  for (const auto* a : rows) {
    out << "S\t" << escape_field(a->canonical) << '\t'
        << escape_field(a->domain) << '\t' << a->message_count << '\t'
        << a->out_reply << '\t' << a->out_forward;
    for (auto h : a->recipient_hist) out << '\t' << h;
    write_stats(a->subject_len);
    write_stats(a->body_len);
    write_stats(a->url_count);
    out << '\t' << a->read << '\t' << a->deleted << '\t' << a->replied << '\t'
        << a->forwarded << '\t' << a->spam_vote << '\t' << a->unsubscribe_msgs
        << '\t' << a->first_ts << '\t' << a->last_ts << '\n';
    for (const auto& [t, c] : a->subject_token_counts)
      out << "TS\t" << escape_field(t) << '\t' << c << '\n';
    for (const auto& [t, c] : a->body_token_counts)
      out << "TB\t" << escape_field(t) << '\t' << c << '\n';
    for (const auto& [f, c] : a->folder_moves)
      out << "F\t" << escape_field(f) << '\t' << c << '\n';
    for (const auto& [h, c] : a->hourly_counts)
      out << "H\t" << h << '\t' << c << '\n';
  }
}

namespace {

template <typename T>
T parse_num(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("aggregates file: bad ") + what +
                             " '" + s + "'");
  return v;
}

LengthStats parse_stats(const std::string& s) {
  LengthStats st;
  double vals[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = s.find(',', pos);
    if (comma == std::string::npos)
      throw std::runtime_error("aggregates file: bad stats field '" + s + "'");
    vals[i] = std::strtod(s.substr(pos, comma - pos).c_str(), nullptr);
    pos = comma + 1;
  }
  st.sum = vals[0];
  st.min = vals[1];
  st.max = vals[2];
  st.count = parse_num<std::uint64_t>(s.substr(pos), "stats count");
  return st;
}

}  // namespace

SenderAggregateMap read_aggregates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open aggregates: " + path);
  SenderAggregateMap out;
  SenderAggregate* cur = nullptr;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_record(line);
    const auto bad = [&](const char* why) {
      return std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                why);
    };
    if (f[0] == "S") {
      if (f.size() != 22) throw bad("S row needs 22 fields");
      SenderAggregate a;
      a.canonical = unescape_field(f[1]);
      a.domain = unescape_field(f[2]);
      a.message_count = parse_num<std::uint64_t>(f[3], "message_count");
      a.out_reply = parse_num<std::uint64_t>(f[4], "out_reply");
      a.out_forward = parse_num<std::uint64_t>(f[5], "out_forward");
      for (std::size_t i = 0; i < kRecipientBuckets; ++i)
        a.recipient_hist[i] = parse_num<std::uint64_t>(f[6 + i], "hist");
      a.subject_len = parse_stats(f[11]);
      a.body_len = parse_stats(f[12]);
      a.url_count = parse_stats(f[13]);
      a.read = parse_num<std::uint64_t>(f[14], "read");
      a.deleted = parse_num<std::uint64_t>(f[15], "deleted");
      a.replied = parse_num<std::uint64_t>(f[16], "replied");
      a.forwarded = parse_num<std::uint64_t>(f[17], "forwarded");
      a.spam_vote = parse_num<std::uint64_t>(f[18], "spam_vote");
      a.unsubscribe_msgs = parse_num<std::uint64_t>(f[19], "unsubscribe_msgs");
      a.first_ts = parse_num<std::int64_t>(f[20], "first_ts");
      a.last_ts = parse_num<std::int64_t>(f[21], "last_ts");
      auto [it, inserted] = out.emplace(a.canonical, std::move(a));
      if (!inserted) throw bad("duplicate sender block");
      cur = &it->second;
    } else if (f[0] == "TS") {
      if (!cur || f.size() != 3) throw bad("orphan or malformed TS row");
      cur->subject_token_counts[unescape_field(f[1])] =
          parse_num<std::uint64_t>(f[2], "token count");
    } else if (f[0] == "TB") {
      if (!cur || f.size() != 3) throw bad("orphan or malformed TB row");
      cur->body_token_counts[unescape_field(f[1])] =
          parse_num<std::uint64_t>(f[2], "token count");
    } else if (f[0] == "F") {
      if (!cur || f.size() != 3) throw bad("orphan or malformed F row");
      cur->folder_moves[unescape_field(f[1])] =
          parse_num<std::uint64_t>(f[2], "folder count");
    } else if (f[0] == "H") {
      if (!cur || f.size() != 3) throw bad("orphan or malformed H row");
      cur->hourly_counts[parse_num<std::int64_t>(f[1], "hour")] =
          parse_num<std::uint32_t>(f[2], "hour count");
    } else {
      throw bad("unknown row tag");
    }
  }
  return out;
}

}  // namespace mailcat
