#include "mailcat/models.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

unsigned effective_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace

FeatureHasher CategoryModelSet::hasher() const {
  if (models.empty()) throw std::logic_error("empty model set");
  return FeatureHasher{models.front().hyper.hash_bits,
                       models.front().hyper.hash_seed};
}

const CategoryModel& CategoryModelSet::for_category(Category c) const {
  for (const auto& m : models)
    if (m.category == c) return m;
  throw std::invalid_argument("no model for category '" +
                              std::string(to_string(c)) + "'");
}

CategoryModelSet train_one_vs_all(const std::vector<TrainExample>& train,
                                  const TrainHyper& hyper, std::uint64_t seed,
                                  unsigned threads) {
  const FeatureHasher hasher{hyper.hash_bits, hyper.hash_seed};
  std::vector<HashedVector> hashed;
  hashed.reserve(train.size());
  for (const auto& ex : train) hashed.push_back(hash_vector(ex.features, hasher));

  for (Category c : kModelCategories) {
    std::size_t pos = 0;
    for (const auto& ex : train)
      if (ex.label == c) ++pos;
    if (pos == 0)
      throw std::invalid_argument("category '" + std::string(to_string(c)) +
                                  "' has no positive examples");
    if (pos == train.size())
      throw std::invalid_argument("category '" + std::string(to_string(c)) +
                                  "' has no negative examples");
  }

  CategoryModelSet set;
  set.models.resize(kModelCategories.size());

  auto train_one = [&](std::size_t slot) {
    const Category cat = kModelCategories[slot];
    std::vector<std::uint8_t> labels;
    labels.reserve(train.size());
    for (const auto& ex : train) labels.push_back(ex.label == cat ? 1 : 0);
    CategoryModel cm;
    cm.category = cat;
    cm.hyper = hyper;
    cm.seed = seed;
    cm.model = train_logistic(hashed, labels, hyper.sgd,
                              seed + static_cast<std::uint64_t>(slot));
    set.models[slot] = std::move(cm);
  };

  const unsigned n_threads =
      std::min<unsigned>(effective_threads(threads),
                         static_cast<unsigned>(kModelCategories.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < kModelCategories.size(); ++i) train_one(i);
  } else {
    std::vector<std::future<void>> futures;
    for (std::size_t i = 0; i < kModelCategories.size(); ++i)
      futures.push_back(std::async(std::launch::async, train_one, i));
    for (auto& f : futures) f.get();
  }
  return set;
}

ScoredPrediction merge_one_vs_all(const std::array<double, 6>& scores) {
  ScoredPrediction out;
  out.scores = scores;
  int best = -1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] <= 0.5) continue;
    if (best < 0 || scores[i] > scores[static_cast<std::size_t>(best)])
      best = static_cast<int>(i);
  }
  if (best >= 0) {
    out.category = kModelCategories[static_cast<std::size_t>(best)];
    out.confidence = scores[static_cast<std::size_t>(best)];
  } else {
    out.category = Category::other;
    out.confidence = *std::min_element(scores.begin(), scores.end());
  }
  return out;
}

ScoredPrediction predict_category(const CategoryModelSet& models,
                                  const FeatureVector& v) {
  const auto hasher = models.hasher();
  for (const auto& m : models.models)
    if (m.hyper.hash_bits != hasher.bits || m.hyper.hash_seed != hasher.seed)
      throw std::invalid_argument("model set mixes hash dimensions");
  const auto hashed = hash_vector(v, hasher);
  std::array<double, 6> scores{};
  for (std::size_t i = 0; i < kModelCategories.size(); ++i)
    scores[i] = models.for_category(kModelCategories[i]).model.prob(hashed);
  return merge_one_vs_all(scores);
}

SenderTable build_sender_table(const CategoryModelSet& models,
                               const SenderAggregateMap& senders,
                               const VocabularySet& vocabs,
                               const CommercialKeywordList& keywords,
                               double cutoff, const BurstConfig& bursts) {
  if (cutoff <= 0.0 || cutoff >= 1.0)
    throw std::invalid_argument("build_sender_table: cutoff must be in (0,1)");
  SenderTable table;
  table.cutoff = cutoff;
  for (const auto& [canonical, agg] : senders) {
    const auto fv = normalize_vector(
        extract_sender_features(agg, vocabs, keywords, bursts));
    const auto pred = predict_category(models, fv);
    if (pred.confidence >= cutoff)
      table.entries.emplace(canonical,
                            std::make_pair(pred.category, pred.confidence));
    if (agg.last_ts > table.built_at) table.built_at = agg.last_ts;
  }
  return table;
}

CategoryModelSet train_message_models(
    const std::unordered_map<std::string, Category>& labeled,
    const std::vector<Message>& corpus, int per_sender,
    const VocabularySet& vocabs, const CommercialKeywordList& keywords,
    const TrainHyper& hyper, std::uint64_t seed, unsigned threads) {
  if (per_sender < 1)
    throw std::invalid_argument("train_message_models: per_sender must be >= 1");

  // candidate message indices per labeled sender, in stream order
  std::map<std::string, std::vector<std::size_t>> candidates;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto canon = canonical_form(corpus[i].sender_address);
    if (labeled.count(canon)) candidates[canon].push_back(i);
  }

  const FeatureHasher id_hasher;  // for per-sender sampling streams
  std::vector<TrainExample> examples;
  for (const auto& [canonical, label] : std::map<std::string, Category>(
           labeled.begin(), labeled.end())) {
    const auto it = candidates.find(canonical);
    if (it == candidates.end()) {
      std::cerr << "warning: labeled sender '" << canonical
                << "' has no messages in the corpus; skipped\n";
      continue;
    }
    auto idx = it->second;
    std::mt19937_64 rng(seed ^ id_hasher.raw_hash(canonical));
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t take =
        std::min<std::size_t>(idx.size(), static_cast<std::size_t>(per_sender));
    for (std::size_t i = 0; i < take; ++i) {
      TrainExample ex;
      ex.features = normalize_vector(
          extract_message_features(corpus[idx[i]], vocabs, keywords));
      ex.label = label;
      examples.push_back(std::move(ex));
    }
  }
  return train_one_vs_all(examples, hyper, seed, threads);
}

std::vector<ImportanceScore> feature_importance(
    const CategoryModel& model,
    const std::vector<std::pair<FeatureVector, bool>>& dataset,
    std::size_t top_n) {
  const std::uint64_t n = dataset.size();
  std::uint64_t n_pos = 0;
  for (const auto& [fv, y] : dataset)
    if (y) ++n_pos;
  if (n_pos == 0)
    throw std::invalid_argument(
        "feature_importance: no positive examples (score undefined)");

  struct Counts {
    std::uint64_t n_k = 0, n_k_pos = 0;
  };
  std::map<std::string, Counts> counts;
  for (const auto& [fv, y] : dataset) {
    for (const auto& f : fv.features) {
      if (f.value == 0.0) continue;
      auto& c = counts[f.id];
      ++c.n_k;
      if (y) ++c.n_k_pos;
    }
  }

  const FeatureHasher hasher{model.hyper.hash_bits, model.hyper.hash_seed};
  const double base_rate = static_cast<double>(n_pos) / static_cast<double>(n);
  std::vector<ImportanceScore> scores;
  for (const auto& [id, c] : counts) {
    const double w = hasher.sign(id) * model.model.weights(hasher.index(id));
    if (w <= 0.0) continue;  // positive-weight features only
    ImportanceScore s;
    s.feature = id;
    s.n = n;
    s.n_pos = n_pos;
    s.n_k = c.n_k;
    s.n_k_pos = c.n_k_pos;
    const double lift =
        (static_cast<double>(c.n_k_pos) / static_cast<double>(c.n_k)) /
        base_rate;
    s.score = static_cast<double>(c.n_k) * (lift - 1.0);
    scores.push_back(std::move(s));
  }
  std::sort(scores.begin(), scores.end(),
            [](const ImportanceScore& a, const ImportanceScore& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.feature < b.feature;
            });
  if (scores.size() > top_n) scores.resize(top_n);
  return scores;
}

// ---- files -----------------------------------------------------------------

void write_model_file(const std::string& path, const CategoryModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model: " + path);
  out << "mailcat-model v1\n";
  out << "category\t" << to_string(model.category) << '\n';
  out << "hash_bits\t" << model.hyper.hash_bits << '\n';
  out << "hash_seed\t" << model.hyper.hash_seed << '\n';
  out << "seed\t" << model.seed << '\n';
  out << "sgd\t" << model.hyper.sgd.epochs << '\t' << fmt17(model.hyper.sgd.lr0)
      << '\t' << fmt17(model.hyper.sgd.l2) << '\n';
  out << "bias\t" << fmt17(model.model.bias) << '\n';
  std::size_t nonzero = 0;
  for (Eigen::Index i = 0; i < model.model.weights.size(); ++i)
    if (model.model.weights(i) != 0.0) ++nonzero;
  out << "weights\t" << nonzero << '\n';
  for (Eigen::Index i = 0; i < model.model.weights.size(); ++i)
    if (model.model.weights(i) != 0.0)
      out << i << '\t' << fmt17(model.model.weights(i)) << '\n';
}

CategoryModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model: " + path);
  std::string line;
  auto next = [&]() -> std::vector<std::string> {
    if (!std::getline(in, line))
      throw std::runtime_error("truncated model file: " + path);
    return split_record(line);
  };
  if (next().at(0) != "mailcat-model v1")
    throw std::runtime_error("bad model header in " + path);
  CategoryModel model;
  auto f = next();
  const auto cat = parse_category(f.at(1));
  if (!cat) throw std::runtime_error("bad category in " + path);
  model.category = *cat;
  model.hyper.hash_bits = std::stoi(next().at(1));
  model.hyper.hash_seed = std::stoull(next().at(1));
  model.seed = std::stoull(next().at(1));
  f = next();
  model.hyper.sgd.epochs = std::stoi(f.at(1));
  model.hyper.sgd.lr0 = std::stod(f.at(2));
  model.hyper.sgd.l2 = std::stod(f.at(3));
  model.model.bits = model.hyper.hash_bits;
  model.model.bias = std::stod(next().at(1));
  model.model.weights =
      Eigen::VectorXd::Zero(1u << model.hyper.hash_bits);
  const auto n = std::stoul(next().at(1));
  for (std::size_t i = 0; i < n; ++i) {
    f = next();
    model.model.weights(std::stol(f.at(0))) = std::stod(f.at(1));
  }
  return model;
}

void write_model_set(const std::string& dir, const CategoryModelSet& models) {
  std::filesystem::create_directories(dir);
  for (const auto& m : models.models)
    write_model_file(dir + "/" + std::string(to_string(m.category)) + ".model",
                     m);
}

CategoryModelSet read_model_set(const std::string& dir) {
  CategoryModelSet set;
  for (Category c : kModelCategories)
    set.models.push_back(
        read_model_file(dir + "/" + std::string(to_string(c)) + ".model"));
  return set;
}

void write_sender_table_file(const std::string& path,
                             const SenderTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sender table: " + path);
  out << "# built_at=" << table.built_at << " cutoff=" << fmt17(table.cutoff)
      << '\n';
  std::vector<std::pair<std::string, std::pair<Category, double>>> rows(
      table.entries.begin(), table.entries.end());
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [sender, entry] : rows)
    out << escape_field(sender) << '\t' << to_string(entry.first) << '\t'
        << fmt17(entry.second) << '\n';
}

SenderTable read_sender_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sender table: " + path);
  SenderTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::sscanf(line.c_str(), "# built_at=%ld cutoff=%lf", &table.built_at,
                  &table.cutoff);
      continue;
    }
    const auto f = split_record(line);
    if (f.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 3 fields");
    const auto cat = parse_category(f[1]);
    if (!cat)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown category '" + f[1] + "'");
    table.entries.emplace(unescape_field(f[0]),
                          std::make_pair(*cat, std::stod(f[2])));
  }
  return table;
}

void write_importance_file(const std::string& path,
                           const std::vector<ImportanceScore>& scores) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write importance: " + path);
  out << "feature\tN\tN_plus\tN_k\tN_k_plus\tscore\n";
  for (const auto& s : scores)
    out << escape_field(s.feature) << '\t' << s.n << '\t' << s.n_pos << '\t'
        << s.n_k << '\t' << s.n_k_pos << '\t' << fmt17(s.score) << '\n';
}

}  // namespace mailcat
