#include "mailcat/labeling.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "mailcat/text.hpp"

namespace mailcat {

LabeledFolderMap load_labeled_folders(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labeled folders: " + path);
  LabeledFolderMap out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_record(line);
    if (f.size() != 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected `folder<TAB>label`");
    const auto cat = parse_category(f[1]);
    if (!cat || *cat == Category::human)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad folder label '" + f[1] + "'");
    out[to_lower(unescape_field(f[0]))] = *cat;
  }
  return out;
}

std::optional<Category> majority_vote_label(
    const std::map<std::string, std::uint64_t>& sender_moves,
    const LabeledFolderMap& labeled_folders, std::uint64_t tau_v,
    std::uint64_t tau_f) {
  std::map<Category, std::uint64_t> votes;
  std::map<Category, std::uint64_t> folders;
  for (const auto& [folder, count] : sender_moves) {
    const auto it = labeled_folders.find(folder);
    if (it == labeled_folders.end()) continue;
    votes[it->second] += count;
    ++folders[it->second];
  }
  if (votes.empty()) return std::nullopt;

  // winner by votes; Category order (alphabetical) breaks ties
  Category best = votes.begin()->first;
  std::uint64_t best_votes = votes.begin()->second;
  for (const auto& [cat, v] : votes) {
    if (v > best_votes) {
      best = cat;
      best_votes = v;
    }
  }
  if (best_votes > tau_v && folders[best] > tau_f) return best;
  return std::nullopt;
}

std::optional<std::pair<Category, double>> lda_soft_vote(
    const std::map<std::string, std::uint64_t>& sender_moves,
    const std::map<std::string, Eigen::VectorXd>& mixtures,
    const std::vector<Category>& topic_labels, double threshold) {
  if (threshold <= 0.0 || threshold > 1.0)
    throw std::invalid_argument("lda_soft_vote: threshold must be in (0,1]");

  Eigen::VectorXd scores;
  bool any = false;
  for (const auto& [folder, count] : sender_moves) {
    const auto it = mixtures.find(folder);
    if (it == mixtures.end()) continue;
    if (!any) {
      scores = Eigen::VectorXd::Zero(it->second.size());
      any = true;
    }
    scores += static_cast<double>(count) * it->second;
  }
  if (!any) return std::nullopt;
  if (static_cast<std::size_t>(scores.size()) != topic_labels.size())
    throw std::invalid_argument("lda_soft_vote: topic label count mismatch");

  const double total = scores.sum();
  if (total <= 0.0) return std::nullopt;
  scores /= total;

  Eigen::Index best = 0;
  scores.maxCoeff(&best);
  if (scores(best) > threshold)
    return std::make_pair(topic_labels[static_cast<std::size_t>(best)],
                          scores(best));
  return std::nullopt;
}

std::optional<HumanMachine> heuristic_human_machine(
    const SenderAggregate& agg, const CanonicalSender& canonical,
    const NameLists& names, const HeuristicConfig& config) {
  const auto tokens = name_part_tokens(canonical.name_part);

  // machine rules take precedence
  if (names.reserved.count(canonical.name_part)) return HumanMachine::machine;
  for (const auto& t : tokens)
    if (names.reserved.count(t)) return HumanMachine::machine;
  if (agg.message_count > 0) {
    const double unsub = static_cast<double>(agg.unsubscribe_msgs) /
                         static_cast<double>(agg.message_count);
    if (unsub >= config.unsubscribe_ratio) return HumanMachine::machine;
    const double spam = static_cast<double>(agg.spam_vote) /
                        static_cast<double>(agg.message_count);
    if (spam > config.spam_vote_ratio) return HumanMachine::machine;
  }

  // human rules
  const auto all_alpha = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isalpha(c);
    });
  };
  if (tokens.size() >= 2 && names.first_names.count(tokens[0]) &&
      all_alpha(tokens[1]))
    return HumanMachine::human;
  for (const auto& pattern : config.human_name_regexes) {
    if (std::regex_match(canonical.name_part, std::regex(pattern)))
      return HumanMachine::human;
  }
  return std::nullopt;
}

namespace {

// Binary human-vs-machine trainer over one feature view.
struct ViewData {
  std::vector<HashedVector> hashed;  // aligned with sender order
};

bool is_human_label(Label l) { return l == Label::human; }

}  // namespace

std::vector<LabeledSender> co_train_expand(
    const std::vector<LabeledSender>& seed_set,
    const SenderAggregateMap& unlabeled, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords, const CoTrainConfig& config) {
  if (config.view_a.empty() || config.view_b.empty())
    throw std::invalid_argument("co_train_expand: a view has no families");
  if (config.rounds < 1)
    throw std::invalid_argument("co_train_expand: rounds must be >= 1");

  std::map<std::string, LabeledSender> pool;
  for (const auto& s : seed_set) pool.emplace(s.canonical, s);

  // candidates in deterministic order
  std::vector<const SenderAggregate*> candidates;
  for (const auto& [canonical, agg] : unlabeled)
    if (!pool.count(canonical)) candidates.push_back(&agg);
  std::sort(candidates.begin(), candidates.end(),
            [](auto* a, auto* b) { return a->canonical < b->canonical; });

  const FeatureHasher hasher{config.hyper.hash_bits, config.hyper.hash_seed};
  auto view_features = [&](const SenderAggregate& agg,
                           const std::vector<Family>& view) {
    const auto fv = normalize_vector(
        filter_families(extract_sender_features(agg, vocabs, keywords), view));
    return hash_vector(fv, hasher);
  };

  std::array<ViewData, 2> candidate_views;
  const std::vector<Family>* views[2] = {&config.view_a, &config.view_b};
  for (int v = 0; v < 2; ++v) {
    candidate_views[v].hashed.reserve(candidates.size());
    std::size_t nonzero = 0;
    for (const auto* agg : candidates) {
      auto h = view_features(*agg, *views[v]);
      nonzero += h.entries.size();
      candidate_views[v].hashed.push_back(std::move(h));
    }
    if (!candidates.empty() && nonzero == 0)
      throw std::invalid_argument(
          "co_train_expand: a view produced no features");
  }

  std::vector<bool> claimed(candidates.size(), false);

  for (int round = 0; round < config.rounds; ++round) {
    const auto& view = *views[round % 2];

    std::vector<HashedVector> train_x;
    std::vector<std::uint8_t> train_y;
    for (const auto& [canonical, labeled] : pool) {
      const auto it = unlabeled.find(canonical);
      // seed senders may lack aggregates; they then only contribute labels
      if (it == unlabeled.end()) continue;
      train_x.push_back(view_features(it->second, view));
      train_y.push_back(is_human_label(labeled.label) ? 1 : 0);
    }
    const bool has_pos =
        std::count(train_y.begin(), train_y.end(), 1) > 0;
    const bool has_neg =
        std::count(train_y.begin(), train_y.end(), 0) > 0;
    if (!has_pos || !has_neg) break;  // nothing learnable this round

    const auto model =
        train_logistic(train_x, train_y, config.hyper.sgd,
                       config.seed + static_cast<std::uint64_t>(round));

    bool added = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (claimed[i]) continue;
      const double p =
          model.prob(candidate_views[static_cast<std::size_t>(round % 2)]
                         .hashed[i]);
      const double conf = std::max(p, 1.0 - p);
      if (conf > config.conf_threshold) {
        LabeledSender s;
        s.canonical = candidates[i]->canonical;
        s.label = p > 0.5 ? Label::human : Label::machine;
        s.source = LabelSource::cotrain;
        s.confidence = conf;
        pool.emplace(s.canonical, std::move(s));
        claimed[i] = true;
        added = true;
      }
    }
    if (!added) break;  // fixpoint
  }

  std::vector<LabeledSender> out;
  out.reserve(pool.size());
  for (const auto& [canonical, s] : pool) out.push_back(s);
  return out;
}

namespace {

std::size_t precedence_rank(const std::vector<LabelSource>& precedence,
                            LabelSource s) {
  for (std::size_t i = 0; i < precedence.size(); ++i)
    if (precedence[i] == s) return i;
  return precedence.size();
}

}  // namespace

MergedLabels merge_labeled_sets(
    const std::vector<std::vector<LabeledSender>>& sets,
    const std::vector<LabelSource>& precedence) {
  struct Claim {
    Label label;
    LabelSource source;
    double confidence;
  };
  std::map<std::string, std::vector<Claim>> by_sender;
  for (const auto& set : sets)
    for (const auto& s : set)
      by_sender[s.canonical].push_back({s.label, s.source, s.confidence});

  MergedLabels out;
  for (auto& [canonical, claims] : by_sender) {
    // coarse machine refined by any machine subcategory is not a conflict
    const bool has_subcat =
        std::any_of(claims.begin(), claims.end(), [](const Claim& c) {
          return is_machine_subcategory(c.label);
        });
    if (has_subcat) {
      claims.erase(std::remove_if(claims.begin(), claims.end(),
                                  [](const Claim& c) {
                                    return c.label == Label::machine;
                                  }),
                   claims.end());
    }

    // deterministic resolution order: precedence, then confidence, then label
    std::sort(claims.begin(), claims.end(), [&](const Claim& a,
                                                const Claim& b) {
      const auto ra = precedence_rank(precedence, a.source);
      const auto rb = precedence_rank(precedence, b.source);
      if (ra != rb) return ra < rb;
      if (a.confidence != b.confidence) return a.confidence > b.confidence;
      return static_cast<int>(a.label) < static_cast<int>(b.label);
    });

    std::set<Label> distinct;
    for (const auto& c : claims) distinct.insert(c.label);

    LabeledSender merged;
    merged.canonical = canonical;
    merged.label = claims.front().label;
    merged.source = claims.front().source;
    merged.confidence = claims.front().confidence;
    for (const auto& c : claims)
      if (c.label == merged.label)
        merged.confidence = std::max(merged.confidence, c.confidence);
    out.merged.push_back(merged);

    if (distinct.size() > 1) {
      LabelConflict conflict;
      conflict.canonical = canonical;
      for (const auto& c : claims)
        conflict.claims.emplace_back(c.label, c.source);
      conflict.resolution = merged.label;
      out.conflicts.push_back(std::move(conflict));
    }
  }
  return out;
}

std::unordered_map<std::string, Category> finalize_labels(
    const std::vector<LabeledSender>& merged) {
  std::unordered_map<std::string, Category> out;
  for (const auto& s : merged)
    out[s.canonical] =
        s.label == Label::machine ? Category::other : to_category(s.label);
  return out;
}

void write_labeled_senders_file(const std::string& path,
                                const std::vector<LabeledSender>& senders) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labeled senders: " + path);
  std::vector<LabeledSender> rows = senders;
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.canonical < b.canonical; });
  for (const auto& s : rows) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", s.confidence);
    out << escape_field(s.canonical) << '\t' << to_string(s.label) << '\t'
        << to_string(s.source) << '\t' << buf << '\n';
  }
}

std::vector<LabeledSender> read_labeled_senders_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labeled senders: " + path);
  std::vector<LabeledSender> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_record(line);
    if (f.size() != 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 4 fields");
    LabeledSender s;
    s.canonical = unescape_field(f[0]);
    const auto label = parse_label(f[1]);
    const auto source = parse_label_source(f[2]);
    if (!label || !source)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad label or source");
    s.label = *label;
    s.source = *source;
    s.confidence = std::stod(f[3]);
    out.push_back(std::move(s));
  }
  return out;
}

void write_conflicts_file(const std::string& path,
                          const std::vector<LabelConflict>& conflicts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write conflicts: " + path);
  out << "# sender\tresolution\tclaims (label@source ...)\n";
  for (const auto& c : conflicts) {
    out << escape_field(c.canonical) << '\t' << to_string(c.resolution);
    for (const auto& [label, source] : c.claims)
      out << '\t' << to_string(label) << '@' << to_string(source);
    out << '\n';
  }
}

}  // namespace mailcat
