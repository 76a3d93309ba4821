#include "mailcat/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string domain_of(const std::string& canonical) {
  const auto at = canonical.rfind('@');
  return at == std::string::npos ? canonical : canonical.substr(at + 1);
}

}  // namespace

SplitPlan split_by_domain(const std::vector<std::string>& canonical_senders,
                          double fraction, int repeats, std::uint64_t seed) {
  if (fraction <= 0.0 || fraction >= 1.0)
    throw std::invalid_argument("split_by_domain: fraction must be in (0,1)");
  if (repeats < 1)
    throw std::invalid_argument("split_by_domain: repeats must be >= 1");

  std::map<std::string, std::size_t> domain_sizes;
  for (const auto& s : canonical_senders) ++domain_sizes[domain_of(s)];
  std::vector<std::string> domains;
  domains.reserve(domain_sizes.size());
  for (const auto& [d, n] : domain_sizes) domains.push_back(d);

  const double target = fraction * static_cast<double>(canonical_senders.size());

  SplitPlan plan;
  plan.fraction = fraction;
  plan.repeats = repeats;
  plan.seed = seed;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < repeats; ++r) {
    std::shuffle(domains.begin(), domains.end(), rng);
    std::set<std::string> train;
    double count = 0;
    for (const auto& d : domains) {
      const double size = static_cast<double>(domain_sizes[d]);
      // stop once adding would move farther from the target than stopping
      if (std::abs(count + size - target) > std::abs(count - target)) break;
      train.insert(d);
      count += size;
    }
    plan.train_domains.push_back(std::move(train));
  }
  return plan;
}

FeatureSubset FeatureSubset::parse(const std::string& name) {
  FeatureSubset s;
  s.name = name;
  if (name == "all") return s;
  if (name == "content") {
    s.address = s.behavioral = s.burst = false;
    return s;
  }
  if (name == "address") {
    s.content_subject = s.content_body = s.content_stats = false;
    s.behavioral = s.burst = false;
    return s;
  }
  if (name == "behavioral") {  // behavioral incl. burst
    s.content_subject = s.content_body = s.content_stats = false;
    s.address = false;
    return s;
  }
  if (name == "no-burst") {
    s.burst = false;
    return s;
  }
  if (name == "no-body") {
    s.content_body = false;
    return s;
  }
  throw std::invalid_argument("unknown feature subset '" + name + "'");
}

std::vector<FeatureSubset> FeatureSubset::standard_columns() {
  return {parse("all"),        parse("content"), parse("address"),
          parse("behavioral"), parse("no-burst"), parse("no-body")};
}

namespace {

bool subset_includes(const FeatureSubset& s, const Feature& f) {
  switch (f.family) {
    case Family::folder: return false;
    case Family::address: return s.address;
    case Family::behavioral: return s.behavioral;
    case Family::burst: return s.burst;
    case Family::content:
      if (f.id.rfind("c:s:", 0) == 0) return s.content_subject;
      if (f.id.rfind("c:b:", 0) == 0) return s.content_body;
      return s.content_stats;
  }
  return false;
}

}  // namespace

FeatureVector apply_subset(const FeatureVector& v,
                           const FeatureSubset& subset) {
  FeatureVector out;
  out.normalized = v.normalized;
  for (const auto& f : v.features)
    if (subset_includes(subset, f)) out.features.push_back(f);
  return out;
}

namespace {

// Pre-hashed sender with a per-feature subset membership mask, so each
// (sender, subset) pair costs one linear merge instead of a re-hash.
struct PreparedSender {
  std::string canonical;
  std::string domain;
  Category label = Category::other;
  std::vector<std::tuple<std::uint32_t, double, std::uint64_t>> entries;
};

std::vector<PreparedSender> prepare_senders(
    const std::unordered_map<std::string, Category>& labeled,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords,
    const std::vector<FeatureSubset>& subsets, const EvalOptions& options) {
  const FeatureHasher hasher{options.hyper.hash_bits, options.hyper.hash_seed};
  std::vector<PreparedSender> out;
  std::vector<std::string> order;
  for (const auto& [canonical, label] : labeled) order.push_back(canonical);
  std::sort(order.begin(), order.end());

  for (const auto& canonical : order) {
    const auto agg = aggregates.find(canonical);
    if (agg == aggregates.end()) continue;
    const auto fv = normalize_vector(extract_sender_features(
        agg->second, vocabs, keywords, options.bursts));
    PreparedSender p;
    p.canonical = canonical;
    p.domain = domain_of(canonical);
    p.label = labeled.at(canonical);
    p.entries.reserve(fv.features.size());
    for (const auto& f : fv.features) {
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < subsets.size(); ++j)
        if (subset_includes(subsets[j], f)) mask |= 1ULL << j;
      if (mask == 0) continue;
      p.entries.emplace_back(hasher.index(f.id),
                             hasher.sign(f.id) * f.value, mask);
    }
    std::sort(p.entries.begin(), p.entries.end(),
              [](const auto& a, const auto& b) {
                return std::get<0>(a) < std::get<0>(b);
              });
    out.push_back(std::move(p));
  }
  return out;
}

HashedVector subset_vector(const PreparedSender& p, std::size_t subset_idx,
                           int bits) {
  HashedVector h;
  h.bits = bits;
  const std::uint64_t bit = 1ULL << subset_idx;
  for (const auto& [bucket, value, mask] : p.entries) {
    if (!(mask & bit)) continue;
    if (!h.entries.empty() && h.entries.back().first == bucket)
      h.entries.back().second += value;
    else
      h.entries.emplace_back(bucket, value);
  }
  return h;
}

}  // namespace

AucTable run_ablation(
    const std::unordered_map<std::string, Category>& labeled,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords,
    const std::vector<FeatureSubset>& subsets, const SplitPlan& plan,
    const EvalOptions& options) {
  if (subsets.empty() || subsets.size() > 64)
    throw std::invalid_argument("run_ablation: need 1..64 subsets");

  const auto prepared = prepare_senders(labeled, aggregates, vocabs, keywords,
                                        subsets, options);

  AucTable table;
  for (const auto& s : subsets) table.columns.push_back(s.name);
  std::map<Category, std::vector<double>> sums;
  for (Category c : kModelCategories)
    sums[c] = std::vector<double>(subsets.size(), 0.0);

  for (int repeat = 0; repeat < plan.repeats; ++repeat) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      if (plan.in_train(repeat, prepared[i].domain))
        train_idx.push_back(i);
      else
        test_idx.push_back(i);
    }
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      std::vector<HashedVector> train_x;
      std::vector<Category> train_labels;
      train_x.reserve(train_idx.size());
      for (auto i : train_idx) {
        train_x.push_back(
            subset_vector(prepared[i], j, options.hyper.hash_bits));
        train_labels.push_back(prepared[i].label);
      }

      // per-category binary training over the shared hashed examples
      std::vector<LogisticModel> models;
      for (std::size_t ci = 0; ci < kModelCategories.size(); ++ci) {
        std::vector<std::uint8_t> y;
        y.reserve(train_labels.size());
        for (auto l : train_labels)
          y.push_back(l == kModelCategories[ci] ? 1 : 0);
        models.push_back(train_logistic(
            train_x, y, options.hyper.sgd,
            options.seed + static_cast<std::uint64_t>(repeat) * 131 +
                static_cast<std::uint64_t>(ci)));
      }

      for (std::size_t ci = 0; ci < kModelCategories.size(); ++ci) {
        std::vector<ScoredExample> scored;
        scored.reserve(test_idx.size());
        for (auto i : test_idx) {
          const auto x =
              subset_vector(prepared[i], j, options.hyper.hash_bits);
          scored.push_back({models[ci].prob(x),
                            prepared[i].label == kModelCategories[ci]});
        }
        sums[kModelCategories[ci]][j] +=
            compute_roc_pr_auc(scored).auc;
      }
    }
  }

  for (Category c : kModelCategories) {
    auto& row = sums[c];
    for (auto& v : row) v /= static_cast<double>(plan.repeats);
    table.rows[c] = row;
  }
  return table;
}

CategoryCurves evaluate_curves(
    const std::unordered_map<std::string, Category>& labeled,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords, const SplitPlan& plan,
    const EvalOptions& options, const FeatureSubset& subset) {
  const std::vector<FeatureSubset> subsets = {subset};
  const auto prepared = prepare_senders(labeled, aggregates, vocabs, keywords,
                                        subsets, options);

  std::map<Category, std::vector<CurveReport>> reports;
  for (int repeat = 0; repeat < plan.repeats; ++repeat) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      if (plan.in_train(repeat, prepared[i].domain))
        train_idx.push_back(i);
      else
        test_idx.push_back(i);
    }
    std::vector<HashedVector> train_x;
    std::vector<Category> train_labels;
    for (auto i : train_idx) {
      train_x.push_back(subset_vector(prepared[i], 0, options.hyper.hash_bits));
      train_labels.push_back(prepared[i].label);
    }
    for (std::size_t ci = 0; ci < kModelCategories.size(); ++ci) {
      std::vector<std::uint8_t> y;
      for (auto l : train_labels) y.push_back(l == kModelCategories[ci] ? 1 : 0);
      const auto model = train_logistic(
          train_x, y, options.hyper.sgd,
          options.seed + static_cast<std::uint64_t>(repeat) * 131 +
              static_cast<std::uint64_t>(ci));
      std::vector<ScoredExample> scored;
      for (auto i : test_idx) {
        const auto x = subset_vector(prepared[i], 0, options.hyper.hash_bits);
        scored.push_back(
            {model.prob(x), prepared[i].label == kModelCategories[ci]});
      }
      reports[kModelCategories[ci]].push_back(compute_roc_pr_auc(scored));
    }
  }

  CategoryCurves out;
  for (const auto& [cat, reps] : reports) {
    CurveReport merged;
    std::vector<std::vector<RocPoint>> rocs;
    double auc = 0;
    for (const auto& r : reps) {
      rocs.push_back(r.roc);
      auc += r.auc;
    }
    merged.roc = average_roc_curves(rocs);
    merged.auc = auc / static_cast<double>(reps.size());

    // vertical PR averaging on a recall grid, best precision at >= recall
    const int grid = 101;
    for (int g = 0; g < grid; ++g) {
      const double recall = static_cast<double>(g) / (grid - 1);
      double precision = 0;
      for (const auto& r : reps) {
        double best = 0;
        for (const auto& p : r.pr)
          if (p.recall >= recall - 1e-12) best = std::max(best, p.precision);
        precision += best;
      }
      merged.pr.push_back({recall, precision / reps.size(), 0.0});
    }
    out.mean_auc[cat] = merged.auc;
    out.per_repeat_merged[cat] = std::move(merged);
  }
  return out;
}

std::vector<Message> build_human_machine_testset(
    const std::vector<Message>& corpus, const SenderAggregateMap& aggregates,
    const TestsetConfig& config) {
  if (config.n < 1)
    throw std::invalid_argument("build_human_machine_testset: n must be >= 1");

  std::vector<std::string> eligible;
  for (const auto& [canonical, agg] : aggregates) {
    if (agg.monthly_mean() > config.monthly_volume_cutoff) continue;
    if (agg.inbound_reply() == 0 &&
        agg.message_count > config.never_replied_sent_cutoff)
      continue;
    eligible.push_back(canonical);
  }
  std::sort(eligible.begin(), eligible.end());
  if (eligible.size() < config.n)
    throw std::invalid_argument(
        "build_human_machine_testset: only " +
        std::to_string(eligible.size()) + " eligible senders for n=" +
        std::to_string(config.n));

  std::mt19937_64 rng(config.seed);
  std::shuffle(eligible.begin(), eligible.end(), rng);
  eligible.resize(config.n);
  std::sort(eligible.begin(), eligible.end());

  std::map<std::string, std::vector<std::size_t>> by_sender;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto canon = canonical_form(corpus[i].sender_address);
    by_sender[canon].push_back(i);
  }

  std::vector<Message> sample;
  sample.reserve(config.n);
  for (const auto& canonical : eligible) {
    const auto it = by_sender.find(canonical);
    if (it == by_sender.end())
      throw std::runtime_error("aggregates and corpus disagree on sender '" +
                               canonical + "'");
    std::uniform_int_distribution<std::size_t> d(0, it->second.size() - 1);
    sample.push_back(corpus[it->second[d(rng)]]);
  }
  return sample;
}

std::map<Category, double> coverage_report(
    const std::vector<CascadeDecision>& decisions) {
  if (decisions.empty())
    throw std::invalid_argument("coverage_report: empty batch");
  std::map<Category, double> shares;
  for (std::size_t c = 0; c < kCategoryCount; ++c)
    shares[static_cast<Category>(c)] = 0.0;
  for (const auto& d : decisions) shares[d.category] += 1.0;
  for (auto& [c, v] : shares) v /= static_cast<double>(decisions.size());
  return shares;
}

HumanMachineStats human_machine_stats(
    const SenderAggregateMap& aggregates,
    const std::unordered_map<std::string, Category>& labels,
    const std::set<std::string>& first_names) {
  HumanMachineStats stats;
  stats.human.read_ratio_hist.assign(10, 0.0);
  stats.machine.read_ratio_hist.assign(10, 0.0);

  for (const auto& [canonical, label] : labels) {
    const auto it = aggregates.find(canonical);
    if (it == aggregates.end()) continue;
    const auto& agg = it->second;
    ClassStats& cls =
        label == Category::human ? stats.human : stats.machine;
    ++cls.senders;

    const double rr = agg.read_ratio();
    const auto bin = std::min<std::size_t>(
        9, static_cast<std::size_t>(rr * 10.0));
    cls.read_ratio_hist[bin] += 1.0;

    if (agg.unsubscribe_msgs > 0) cls.unsubscribe_presence += 1.0;
    const auto tokens =
        name_part_tokens(canonicalize_sender(agg.canonical).name_part);
    if (!tokens.empty() && first_names.count(tokens[0]))
      cls.common_name_presence += 1.0;
    if (agg.max_hourly() > 100) cls.burst100_presence += 1.0;
    if (agg.subject_len.mean() > 30) cls.avg_subject_over_30 += 1.0;
    if (agg.body_len.mean() > 300) cls.avg_body_over_300 += 1.0;
    if (agg.url_count.mean() > 3) cls.avg_urls_over_3 += 1.0;
  }

  for (ClassStats* cls : {&stats.human, &stats.machine}) {
    if (cls->senders == 0) continue;
    const double n = static_cast<double>(cls->senders);
    for (auto& b : cls->read_ratio_hist) b /= n;
    cls->unsubscribe_presence /= n;
    cls->common_name_presence /= n;
    cls->burst100_presence /= n;
    cls->avg_subject_over_30 /= n;
    cls->avg_body_over_300 /= n;
    cls->avg_urls_over_3 /= n;
  }
  return stats;
}

void write_auc_table_file(const std::string& path, const AucTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write auc table: " + path);
  out << "category";
  for (const auto& c : table.columns) out << '\t' << c;
  out << '\n';
  for (const auto& [cat, row] : table.rows) {
    out << to_string(cat);
    for (double v : row) out << '\t' << fmt(v);
    out << '\n';
  }
}

void write_coverage_report_file(const std::string& path,
                                const std::map<Category, double>& shares) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write coverage report: " + path);
  out << "category\tshare\n";
  double total = 0;
  for (const auto& [cat, share] : shares) {
    out << to_string(cat) << '\t' << fmt(share) << '\n';
    total += share;
  }
  out << "total\t" << fmt(total) << '\n';
}

void write_human_machine_stats_file(const std::string& path,
                                    const HumanMachineStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write stats: " + path);
  auto section = [&](const char* name, const ClassStats& cls) {
    out << "class\t" << name << '\n';
    out << "senders\t" << cls.senders << '\n';
    out << "read_ratio_hist";
    for (double b : cls.read_ratio_hist) out << '\t' << fmt(b);
    out << '\n';
    out << "unsubscribe_presence\t" << fmt(cls.unsubscribe_presence) << '\n';
    out << "common_name_presence\t" << fmt(cls.common_name_presence) << '\n';
    out << "burst100_presence\t" << fmt(cls.burst100_presence) << '\n';
    out << "avg_subject_over_30\t" << fmt(cls.avg_subject_over_30) << '\n';
    out << "avg_body_over_300\t" << fmt(cls.avg_body_over_300) << '\n';
    out << "avg_urls_over_3\t" << fmt(cls.avg_urls_over_3) << '\n';
  };
  section("human", stats.human);
  section("machine", stats.machine);
}

}  // namespace mailcat
