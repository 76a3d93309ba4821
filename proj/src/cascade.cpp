#include "mailcat/cascade.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::lightweight: return "lightweight";
    case Stage::sender_table: return "sender_table";
    case Stage::heavyweight: return "heavyweight";
  }
  throw std::logic_error("bad Stage value");
}

LightweightRules build_lightweight_rules(const SenderAggregateMap& senders,
                                         const SenderTable& table,
                                         std::size_t n_top,
                                         double consistency) {
  if (consistency <= 0.5 || consistency > 1.0)
    throw std::invalid_argument(
        "build_lightweight_rules: consistency must be in (0.5, 1]");

  std::vector<const SenderAggregate*> ranked;
  ranked.reserve(senders.size());
  for (const auto& [k, v] : senders) ranked.push_back(&v);
  std::sort(ranked.begin(), ranked.end(), [](auto* a, auto* b) {
    if (a->message_count != b->message_count)
      return a->message_count > b->message_count;
    return a->canonical < b->canonical;
  });
  if (ranked.size() > n_top) ranked.resize(n_top);

  LightweightRules rules;
  for (const auto* agg : ranked) {
    const auto hit = table.lookup(agg->canonical);
    if (hit && hit->second >= consistency)
      rules.whitelist.emplace(agg->canonical, hit->first);
  }
  return rules;
}

CascadeDecision classify_message(const Message& msg,
                                 const LightweightRules& rules,
                                 const SenderTable& table,
                                 const CategoryModelSet& msg_models,
                                 const VocabularySet& vocabs,
                                 const CommercialKeywordList& keywords) {
  CascadeDecision decision;
  decision.id = msg.id;

  // stage 1: the reply/forward rule is the cheaper check and guards
  // against mixed human-machine senders, so it fires before the whitelist
  if (rules.reply_forward_human && (msg.is_reply || msg.is_forward)) {
    decision.category = Category::human;
    decision.confidence = 1.0;
    decision.stage = Stage::lightweight;
    return decision;
  }
  const std::string canonical = canonical_form(msg.sender_address);
  if (const auto it = rules.whitelist.find(canonical);
      it != rules.whitelist.end()) {
    decision.category = it->second;
    decision.confidence = 1.0;
    decision.stage = Stage::lightweight;
    return decision;
  }

  // stage 2: sender table lookup
  if (const auto hit = table.lookup(canonical)) {
    decision.category = hit->first;
    decision.confidence = hit->second;
    decision.stage = Stage::sender_table;
    return decision;
  }

  // stage 3: heavyweight message-level classification; `other` is a
  // decision here, not an abstention
  const auto fv =
      normalize_vector(extract_message_features(msg, vocabs, keywords));
  const auto pred = predict_category(msg_models, fv);
  decision.category = pred.category;
  decision.confidence = pred.confidence;
  decision.stage = Stage::heavyweight;
  return decision;
}

std::vector<CascadeDecision> classify_batch(
    const std::vector<Message>& messages, const LightweightRules& rules,
    const SenderTable& table, const CategoryModelSet& msg_models,
    const VocabularySet& vocabs, const CommercialKeywordList& keywords,
    CascadeSummary* summary) {
  std::vector<CascadeDecision> decisions;
  decisions.reserve(messages.size());
  const auto start = std::chrono::steady_clock::now();
  for (const auto& msg : messages)
    decisions.push_back(
        classify_message(msg, rules, table, msg_models, vocabs, keywords));
  const auto end = std::chrono::steady_clock::now();
  if (summary) {
    summary->total = decisions.size();
    summary->by_stage = {};
    for (const auto& d : decisions)
      ++summary->by_stage[static_cast<std::size_t>(d.stage)];
    summary->elapsed_seconds =
        std::chrono::duration<double>(end - start).count();
  }
  return decisions;
}

void write_decisions_file(const std::string& path,
                          const std::vector<CascadeDecision>& decisions) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write decisions: " + path);
  for (const auto& d : decisions) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", d.confidence);
    out << escape_field(d.id) << '\t' << to_string(d.category) << '\t' << buf
        << '\t' << to_string(d.stage) << '\n';
  }
}

std::vector<CascadeDecision> read_decisions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open decisions: " + path);
  std::vector<CascadeDecision> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_record(line);
    if (f.size() != 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 4 fields");
    CascadeDecision d;
    d.id = unescape_field(f[0]);
    const auto cat = parse_category(f[1]);
    if (!cat)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown category");
    d.category = *cat;
    d.confidence = std::stod(f[2]);
    if (f[3] == "lightweight")
      d.stage = Stage::lightweight;
    else if (f[3] == "sender_table")
      d.stage = Stage::sender_table;
    else if (f[3] == "heavyweight")
      d.stage = Stage::heavyweight;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown stage");
    out.push_back(std::move(d));
  }
  return out;
}

void write_cascade_summary(const std::string& path,
                           const CascadeSummary& summary) {
  nlohmann::json j;
  j["total"] = summary.total;
  for (int s = 0; s < 3; ++s) {
    const auto stage = static_cast<Stage>(s);
    j["stages"][std::string(to_string(stage))] = {
        {"count", summary.by_stage[static_cast<std::size_t>(s)]},
        {"share", summary.stage_share(stage)}};
  }
  j["elapsed_seconds"] = summary.elapsed_seconds;
  j["messages_per_second"] = summary.throughput();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mailcat
