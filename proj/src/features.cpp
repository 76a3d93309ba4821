#include "mailcat/features.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

CommercialKeywordList CommercialKeywordList::load(const std::string& path) {
  auto words = load_word_list(path);
  return from_words({words.begin(), words.end()});
}

CommercialKeywordList CommercialKeywordList::from_words(
    std::vector<std::string> words) {
  CommercialKeywordList list;
  for (auto& w : words) list.keywords.push_back(to_lower(w));
  std::sort(list.keywords.begin(), list.keywords.end());
  list.keywords.erase(
      std::unique(list.keywords.begin(), list.keywords.end()),
      list.keywords.end());
  return list;
}

std::vector<std::string> CommercialKeywordList::matches(
    const std::string& address) const {
  std::vector<std::string> hits;
  for (const auto& kw : keywords)
    if (address.find(kw) != std::string::npos) hits.push_back(kw);
  return hits;
}

std::vector<bool> extract_burst_indicators(
    const std::vector<std::uint32_t>& hourly_counts,
    const BurstConfig& config) {
  std::uint32_t max_count = 0;
  for (auto c : hourly_counts) max_count = std::max(max_count, c);
  std::vector<bool> out;
  out.reserve(config.ladder.size());
  for (auto threshold : config.ladder) out.push_back(max_count > threshold);
  return out;
}

namespace {

void add_address_features(FeatureVector& fv, const std::string& address,
                          const VocabularySet& vocabs,
                          const CommercialKeywordList& keywords) {
  const auto canon = canonicalize_sender(address);
  bool wildcard = false;
  std::set<std::string> name_tokens, domain_tokens;
  for (const auto& tok : name_part_tokens(canon.name_part)) {
    if (tok == "*")
      wildcard = true;
    else if (vocabs.address.contains(tok))
      name_tokens.insert(tok);
  }
  for (const auto& tok : tokenize(canon.domain_part))
    if (vocabs.address.contains(tok)) domain_tokens.insert(tok);

  for (const auto& t : name_tokens)
    fv.add(Family::address, ValueKind::ratio, "a:name:" + t, 1.0);
  for (const auto& t : domain_tokens)
    fv.add(Family::address, ValueKind::ratio, "a:dom:" + t, 1.0);
  for (const auto& kw : keywords.matches(canon.canonical))
    fv.add(Family::address, ValueKind::ratio, "a:kw:" + kw, 1.0);
  if (wildcard) fv.add(Family::address, ValueKind::ratio, "a:rand", 1.0);
}

void add_length_stats(FeatureVector& fv, const char* name,
                      const LengthStats& s) {
  fv.add(Family::content, ValueKind::count, std::string("c:") + name + ":avg",
         s.mean());
  fv.add(Family::content, ValueKind::count, std::string("c:") + name + ":min",
         s.count ? s.min : 0.0);
  fv.add(Family::content, ValueKind::count, std::string("c:") + name + ":max",
         s.count ? s.max : 0.0);
}

}  // namespace

FeatureVector extract_message_features(const Message& msg,
                                       const VocabularySet& vocabs,
                                       const CommercialKeywordList& keywords) {
  FeatureVector fv;

  std::map<std::string, std::uint32_t> subj, body;
  for (const auto& t : msg.subject_tokens)
    if (vocabs.content.contains(t)) ++subj[t];
  for (const auto& t : msg.body_tokens)
    if (vocabs.content.contains(t)) ++body[t];
  for (const auto& [t, c] : subj)
    fv.add(Family::content, ValueKind::count, "c:s:" + t, c);
  for (const auto& [t, c] : body)
    fv.add(Family::content, ValueKind::count, "c:b:" + t, c);

  fv.add(Family::content, ValueKind::count, "c:len:subject",
         static_cast<double>(msg.subject_len));
  fv.add(Family::content, ValueKind::count, "c:len:body",
         static_cast<double>(msg.body_len));
  fv.add(Family::content, ValueKind::count, "c:urls",
         static_cast<double>(msg.url_count));

  add_address_features(fv, msg.sender_address, vocabs, keywords);

  fv.finalize();
  return fv;
}

FeatureVector extract_sender_features(const SenderAggregate& agg,
                                      const VocabularySet& vocabs,
                                      const CommercialKeywordList& keywords,
                                      const BurstConfig& bursts) {
  if (agg.message_count == 0)
    throw std::invalid_argument("extract_sender_features: zero-message "
                                "aggregate for '" + agg.canonical + "'");

  FeatureVector fv;

  // content: total word counts plus length statistics
  for (const auto& [t, c] : agg.subject_token_counts)
    if (vocabs.content.contains(t))
      fv.add(Family::content, ValueKind::count, "c:s:" + t,
             static_cast<double>(c));
  for (const auto& [t, c] : agg.body_token_counts)
    if (vocabs.content.contains(t))
      fv.add(Family::content, ValueKind::count, "c:b:" + t,
             static_cast<double>(c));
  add_length_stats(fv, "len:subject", agg.subject_len);
  add_length_stats(fv, "len:body", agg.body_len);
  add_length_stats(fv, "urls", agg.url_count);

  // behavioral: outbound volumes, recipient histogram, inbound, ratios
  const double n = static_cast<double>(agg.message_count);
  fv.add(Family::behavioral, ValueKind::count, "b:out:total", n);
  fv.add(Family::behavioral, ValueKind::count, "b:out:reply",
         static_cast<double>(agg.out_reply));
  fv.add(Family::behavioral, ValueKind::count, "b:out:forward",
         static_cast<double>(agg.out_forward));
  fv.add(Family::behavioral, ValueKind::count, "b:out:weekly",
         agg.weekly_mean());
  fv.add(Family::behavioral, ValueKind::count, "b:out:monthly",
         agg.monthly_mean());
  static const char* kBucketNames[kRecipientBuckets] = {"1", "2_5", "6_20",
                                                        "21_100", "100_plus"};
  for (std::size_t i = 0; i < kRecipientBuckets; ++i)
    fv.add(Family::behavioral, ValueKind::count,
           std::string("b:rcpt:") + kBucketNames[i],
           static_cast<double>(agg.recipient_hist[i]));
  fv.add(Family::behavioral, ValueKind::count, "b:in:total",
         static_cast<double>(agg.inbound_total()));
  fv.add(Family::behavioral, ValueKind::count, "b:in:reply",
         static_cast<double>(agg.inbound_reply()));
  fv.add(Family::behavioral, ValueKind::count, "b:in:forward",
         static_cast<double>(agg.inbound_forward()));

  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:read", agg.read / n);
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:deleted",
         agg.deleted / n);
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:replied",
         agg.replied / n);
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:forwarded",
         agg.forwarded / n);
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:spam",
         agg.spam_vote / n);

  std::uint64_t moved = 0;
  for (const auto& [f, c] : agg.folder_moves) moved += c;
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:foldered", moved / n);
  const auto trash = agg.folder_moves.find("trash");
  const auto spam = agg.folder_moves.find("spam");
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:move:trash",
         (trash == agg.folder_moves.end() ? 0 : trash->second) / n);
  fv.add(Family::behavioral, ValueKind::ratio, "b:ratio:move:spam",
         (spam == agg.folder_moves.end() ? 0 : spam->second) / n);

  // burst indicators
  std::vector<std::uint32_t> hourly;
  hourly.reserve(agg.hourly_counts.size());
  for (const auto& [h, c] : agg.hourly_counts) hourly.push_back(c);
  const auto indicators = extract_burst_indicators(hourly, bursts);
  for (std::size_t i = 0; i < bursts.ladder.size(); ++i)
    fv.add(Family::burst, ValueKind::ratio,
           "t:gt" + std::to_string(bursts.ladder[i]),
           indicators[i] ? 1.0 : 0.0);

  // folder-name features weighted by move counts
  for (const auto& [f, c] : agg.folder_moves)
    if (vocabs.folder.contains(f))
      fv.add(Family::folder, ValueKind::count, "f:" + f,
             static_cast<double>(c));

  add_address_features(fv, agg.canonical, vocabs, keywords);

  fv.finalize();
  return fv;
}

}  // namespace mailcat
