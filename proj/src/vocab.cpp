#include "mailcat/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

std::string_view to_string(VocabKind k) {
  switch (k) {
    case VocabKind::content: return "content";
    case VocabKind::address_substring: return "address_substring";
    case VocabKind::folder_name: return "folder_name";
  }
  throw std::logic_error("bad VocabKind value");
}

std::set<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(to_lower(line));
  }
  return words;
}

namespace {

// Prune a distinct-sender count map: stop words (optional), the top_n most
// widespread terms, then the min-sender floor, in that reason order.
Vocabulary prune(VocabKind kind,
                 const std::map<std::string, std::uint64_t>& counts,
                 std::uint32_t top_n, std::uint64_t min_senders,
                 const std::set<std::string>* stop_words) {
  std::vector<const std::pair<const std::string, std::uint64_t>*> ranked;
  ranked.reserve(counts.size());
  for (const auto& kv : counts) ranked.push_back(&kv);
  std::sort(ranked.begin(), ranked.end(), [](auto* a, auto* b) {
    if (a->second != b->second) return a->second > b->second;
    return a->first < b->first;
  });

  std::set<std::string> top;
  for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i)
    top.insert(ranked[i]->first);

  Vocabulary vocab;
  vocab.kind = kind;
  for (const auto& [term, senders] : counts) {
    if (stop_words && stop_words->count(term)) {
      vocab.exclusions.push_back({term, "stop_word"});
    } else if (top.count(term)) {
      vocab.exclusions.push_back({term, "top_frequent"});
    } else if (senders < min_senders) {
      vocab.exclusions.push_back({term, "min_senders"});
    } else {
      vocab.sender_counts.emplace(term, senders);
    }
  }
  std::uint32_t next = 0;
  for (const auto& [term, _] : vocab.sender_counts) vocab.index[term] = next++;
  return vocab;
}

}  // namespace

VocabularySet build_vocabularies(const SenderAggregateMap& aggregates,
                                 const VocabConfig& config) {
  if (aggregates.empty())
    throw std::invalid_argument("build_vocabularies: empty corpus");

  std::map<std::string, std::uint64_t> content, address, folder;
  for (const auto& [canonical, agg] : aggregates) {
    std::set<std::string> terms;
    for (const auto& [t, _] : agg.subject_token_counts) terms.insert(t);
    for (const auto& [t, _] : agg.body_token_counts) terms.insert(t);
    for (const auto& t : terms) ++content[t];

    std::set<std::string> subs;
    const auto canon = canonicalize_sender(agg.canonical);
    for (const auto& tok : name_part_tokens(canon.name_part))
      if (tok != "*") subs.insert(tok);
    for (const auto& tok : tokenize(canon.domain_part)) subs.insert(tok);
    for (const auto& s : subs) ++address[s];

    for (const auto& [f, _] : agg.folder_moves) ++folder[f];
  }

  VocabularySet out;
  out.content = prune(VocabKind::content, content, config.content_top,
                      config.content_min_senders, &config.stop_words);
  out.address =
      prune(VocabKind::address_substring, address, config.address_top,
            config.address_min_senders, nullptr);
  out.folder = prune(VocabKind::folder_name, folder, config.folder_top,
                     config.folder_min_senders, nullptr);
  return out;
}

VocabularySet build_vocabularies(const std::vector<Message>& corpus,
                                 const VocabConfig& config) {
  if (corpus.empty())
    throw std::invalid_argument("build_vocabularies: empty corpus");
  return build_vocabularies(aggregate_by_sender(corpus), config);
}

void write_vocabulary_file(const std::string& path, const Vocabulary& vocab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
  out << "# kind=" << to_string(vocab.kind) << '\n';
  for (const auto& [term, idx] : vocab.index)
    out << escape_field(term) << '\t' << idx << '\t'
        << vocab.sender_counts.at(term) << '\n';
}

Vocabulary read_vocabulary_file(const std::string& path, VocabKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary: " + path);
  Vocabulary vocab;
  vocab.kind = kind;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_record(line);
    if (f.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 3 fields");
    const auto term = unescape_field(f[0]);
    std::uint32_t idx{};
    std::uint64_t senders{};
    std::from_chars(f[1].data(), f[1].data() + f[1].size(), idx);
    std::from_chars(f[2].data(), f[2].data() + f[2].size(), senders);
    vocab.index[term] = idx;
    vocab.sender_counts[term] = senders;
  }
  return vocab;
}

void write_exclusions_file(const std::string& path, const Vocabulary& vocab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write exclusions: " + path);
  out << "# kind=" << to_string(vocab.kind) << '\n';
  for (const auto& e : vocab.exclusions)
    out << escape_field(e.term) << '\t' << e.reason << '\n';
}

}  // namespace mailcat
