// mailcat — end-to-end email categorization pipeline CLI.
//
// Subcommands read declared inputs and write declared outputs; every stage
// is deterministic for a fixed seed. Exit codes: 0 success, 1 usage,
// 2 data error, 3 internal error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mailcat/aggregate.hpp"
#include "mailcat/cascade.hpp"
#include "mailcat/config.hpp"
#include "mailcat/eval.hpp"
#include "mailcat/features.hpp"
#include "mailcat/folder_docs.hpp"
#include "mailcat/labeling.hpp"
#include "mailcat/lda.hpp"
#include "mailcat/message.hpp"
#include "mailcat/metrics.hpp"
#include "mailcat/models.hpp"
#include "mailcat/synth.hpp"
#include "mailcat/text.hpp"
#include "mailcat/vocab.hpp"

namespace fs = std::filesystem;
using namespace mailcat;

namespace {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw DataError("missing input file: " + path);
}

PipelineConfig load_config_opt(const std::string& path) {
  if (path.empty()) return PipelineConfig{};
  require_file(path);
  return load_pipeline_config(path);
}

VocabularySet load_vocab_dir(const std::string& dir) {
  require_file(dir + "/content_vocab.tsv");
  VocabularySet v;
  v.content =
      read_vocabulary_file(dir + "/content_vocab.tsv", VocabKind::content);
  v.address = read_vocabulary_file(dir + "/address_vocab.tsv",
                                   VocabKind::address_substring);
  v.folder =
      read_vocabulary_file(dir + "/folder_vocab.tsv", VocabKind::folder_name);
  return v;
}

SenderAggregateMap load_aggregates(const std::string& path) {
  require_file(path);
  return read_aggregates_file(path);
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_synth(const PipelineConfig& cfg, const std::string& out_dir,
              std::uint64_t seed, std::uint64_t senders,
              double messages_per_sender) {
  fs::create_directories(out_dir);
  auto synth = SynthConfig::with_total_senders(senders, seed);
  synth.messages_per_sender = messages_per_sender;
  synth.human_share = cfg.synth.human_share;
  synth.folder_user_share = cfg.synth.folder_user_share;
  synth.mixed_sender_rate = cfg.synth.mixed_sender_rate;
  synth.mixed_message_rate = cfg.synth.mixed_message_rate;

  GroundTruth truth;
  std::ofstream corpus(out_dir + "/corpus.tsv");
  if (!corpus) throw DataError("cannot write " + out_dir + "/corpus.tsv");
  std::uint64_t count = 0;
  generate_synthetic_corpus(
      synth,
      [&](const Message& m) {
        corpus << serialize_message_record(m) << '\n';
        ++count;
      },
      &truth);
  corpus.close();
  write_ground_truth_file(out_dir + "/ground_truth.tsv", truth);
  write_message_truth_file(out_dir + "/message_truth.tsv", truth);
  std::cout << "synth: " << count << " messages, "
            << truth.sender_category.size() << " senders -> " << out_dir
            << '\n';
  return 0;
}

int cmd_ingest(const std::string& in, const std::string& out) {
  require_file(in);
  std::ofstream sink(out);
  if (!sink) throw DataError("cannot write " + out);
  std::uint64_t count = 0;
  for_each_message(in, [&](const Message& m) {
    sink << serialize_message_record(m) << '\n';
    ++count;
  });
  std::cout << "ingest: " << count << " valid records -> " << out << '\n';
  return 0;
}

int cmd_aggregate(const std::string& in, const std::string& out,
                  std::uint64_t min_messages) {
  require_file(in);
  SenderAggregator agg;
  for_each_message(in, [&](const Message& m) { agg.add(m); });
  auto map = agg.take();
  const auto raw = map.size();
  if (min_messages > 0) map = filter_aggregates(map, min_messages);
  write_aggregates_file(out, map);
  std::cout << "aggregate: " << raw << " raw senders, " << map.size()
            << " after floor " << min_messages << " -> " << out << '\n';
  return 0;
}

int cmd_vocab(const PipelineConfig& cfg, const std::string& aggregates_path,
              const std::string& out_dir) {
  const auto aggregates = load_aggregates(aggregates_path);
  const auto vocabs = build_vocabularies(aggregates, cfg.vocab_config());
  fs::create_directories(out_dir);
  write_vocabulary_file(out_dir + "/content_vocab.tsv", vocabs.content);
  write_exclusions_file(out_dir + "/content_exclusions.tsv", vocabs.content);
  write_vocabulary_file(out_dir + "/address_vocab.tsv", vocabs.address);
  write_exclusions_file(out_dir + "/address_exclusions.tsv", vocabs.address);
  write_vocabulary_file(out_dir + "/folder_vocab.tsv", vocabs.folder);
  write_exclusions_file(out_dir + "/folder_exclusions.tsv", vocabs.folder);
  std::cout << "vocab: content " << vocabs.content.size() << ", address "
            << vocabs.address.size() << ", folder " << vocabs.folder.size()
            << " -> " << out_dir << '\n';
  return 0;
}

int cmd_lda(const PipelineConfig& cfg, const std::string& in,
            const std::string& vocab_dir, const std::string& out_dir,
            const std::vector<int>& k_candidates, std::uint64_t seed) {
  require_file(in);
  const auto vocabs = load_vocab_dir(vocab_dir);

  FolderDocConfig fd_cfg;
  fd_cfg.floor = cfg.lda.folder_floor;
  fd_cfg.third_party_folders = load_word_list(cfg.data.third_party_folders);
  FolderDocumentBuilder builder(fd_cfg);
  for_each_message(in, [&](const Message& m) { builder.add(m); });
  const auto docs = builder.build();

  fs::create_directories(out_dir);
  const auto hyper = cfg.lda_hyper();

  if (!k_candidates.empty()) {
    const auto reports =
        select_k(docs, vocabs.content, k_candidates, hyper, seed,
                 cfg.lda.coverage_threshold);
    write_coverage_file(out_dir + "/coverage_by_k.tsv", reports);
    std::cout << "lda: coverage report for " << k_candidates.size()
              << " candidates -> " << out_dir << "/coverage_by_k.tsv\n";
    return 0;
  }

  const auto model = train_lda(docs, vocabs.content, cfg.lda.k, hyper, seed);
  write_topic_model_file(out_dir + "/topics.model", model);
  write_topics_dump(out_dir + "/topics_top_words.tsv", model);
  write_mixtures_file(out_dir + "/mixtures.tsv", model);
  const auto coverage =
      topic_coverage(model, docs, cfg.lda.coverage_threshold);
  write_coverage_file(out_dir + "/coverage.tsv", {coverage});

  const auto folders = load_labeled_folders(cfg.data.labeled_folders);
  const auto suggested =
      assign_topic_labels_from_folders(model, docs, folders);
  write_topic_labels(out_dir + "/topic_labels.tsv", suggested);

  std::cout << "lda: K=" << cfg.lda.k << " over " << docs.size()
            << " folder documents, total coverage "
            << coverage.total << " -> " << out_dir << '\n';
  return 0;
}

int cmd_label(const PipelineConfig& cfg, const std::string& aggregates_path,
              const std::string& vocab_dir, const std::string& mixtures_path,
              const std::string& topic_labels_path,
              const std::string& manual_path, const std::string& out,
              const std::string& conflicts_out) {
  const auto aggregates = load_aggregates(aggregates_path);
  const auto vocabs = load_vocab_dir(vocab_dir);
  const auto keywords = CommercialKeywordList::load(cfg.data.keywords);
  const auto folders = load_labeled_folders(cfg.data.labeled_folders);
  NameLists names;
  names.first_names = load_word_list(cfg.data.first_names);
  names.reserved = load_word_list(cfg.data.reserved_names);

  std::vector<std::vector<LabeledSender>> sets;

  if (!manual_path.empty()) {
    require_file(manual_path);
    sets.push_back(read_labeled_senders_file(manual_path));
  }

  // folder-based majority voting
  std::vector<LabeledSender> folder_votes;
  for (const auto& [canonical, agg] : aggregates) {
    const auto label = majority_vote_label(agg.folder_moves, folders,
                                           cfg.label.tau_v, cfg.label.tau_f);
    if (label)
      folder_votes.push_back(
          {canonical, to_label(*label), LabelSource::folder_vote, 1.0});
  }
  sets.push_back(std::move(folder_votes));

  // LDA soft voting
  if (!mixtures_path.empty()) {
    require_file(mixtures_path);
    require_file(topic_labels_path);
    const auto mixtures = read_mixtures_file(mixtures_path);
    const auto k = mixtures.empty()
                       ? 0
                       : static_cast<int>(mixtures.begin()->second.size());
    const auto topic_labels = read_topic_labels(topic_labels_path, k);
    std::vector<LabeledSender> lda_votes;
    for (const auto& [canonical, agg] : aggregates) {
      const auto vote = lda_soft_vote(agg.folder_moves, mixtures, topic_labels,
                                      cfg.label.lda_threshold);
      if (vote)
        lda_votes.push_back({canonical, to_label(vote->first),
                             LabelSource::lda_vote, vote->second});
    }
    sets.push_back(std::move(lda_votes));
  }

  // human/machine heuristics
  HeuristicConfig h_cfg;
  h_cfg.unsubscribe_ratio = cfg.label.unsubscribe_ratio;
  h_cfg.spam_vote_ratio = cfg.label.spam_vote_ratio;
  std::vector<LabeledSender> heuristic_votes;
  for (const auto& [canonical, agg] : aggregates) {
    const auto canon = canonicalize_sender(canonical);
    const auto hm = heuristic_human_machine(agg, canon, names, h_cfg);
    if (hm)
      heuristic_votes.push_back(
          {canonical,
           *hm == HumanMachine::human ? Label::human : Label::machine,
           LabelSource::heuristic, 1.0});
  }
  sets.push_back(std::move(heuristic_votes));

  // co-training expansion from everything labeled so far
  {
    const auto interim = merge_labeled_sets(sets);
    CoTrainConfig ct;
    ct.rounds = cfg.label.cotrain_rounds;
    ct.conf_threshold = cfg.label.cotrain_threshold;
    ct.hyper = cfg.train_hyper();
    ct.seed = cfg.seed;
    const auto expanded =
        co_train_expand(interim.merged, aggregates, vocabs, keywords, ct);
    std::vector<LabeledSender> additions;
    for (const auto& s : expanded)
      if (s.source == LabelSource::cotrain) additions.push_back(s);
    sets.push_back(std::move(additions));
  }

  const auto merged = merge_labeled_sets(sets);
  write_labeled_senders_file(out, merged.merged);
  write_conflicts_file(conflicts_out, merged.conflicts);
  std::cout << "label: " << merged.merged.size() << " labeled senders, "
            << merged.conflicts.size() << " conflicts -> " << out << '\n';
  return 0;
}

std::vector<TrainExample> sender_examples(
    const std::unordered_map<std::string, Category>& labels,
    const SenderAggregateMap& aggregates, const VocabularySet& vocabs,
    const CommercialKeywordList& keywords, const BurstConfig& bursts,
    bool include_folder_features) {
  std::vector<std::string> order;
  for (const auto& [canonical, cat] : labels) order.push_back(canonical);
  std::sort(order.begin(), order.end());

  std::vector<TrainExample> examples;
  for (const auto& canonical : order) {
    const auto it = aggregates.find(canonical);
    if (it == aggregates.end()) continue;
    auto fv = extract_sender_features(it->second, vocabs, keywords, bursts);
    if (!include_folder_features)
      fv = filter_families(fv, {Family::content, Family::address,
                                Family::behavioral, Family::burst});
    TrainExample ex;
    ex.features = normalize_vector(fv);
    ex.label = labels.at(canonical);
    examples.push_back(std::move(ex));
  }
  return examples;
}

std::unordered_map<std::string, Category> labels_from_file(
    const std::string& path) {
  require_file(path);
  return finalize_labels(read_labeled_senders_file(path));
}

int cmd_train(const PipelineConfig& cfg, const std::string& labeled_path,
              const std::string& aggregates_path, const std::string& vocab_dir,
              const std::string& out_dir, bool message_level,
              const std::string& corpus_path, std::uint64_t seed,
              unsigned threads, bool with_folder_features) {
  const auto labels = labels_from_file(labeled_path);
  const auto vocabs = load_vocab_dir(vocab_dir);
  const auto keywords = CommercialKeywordList::load(cfg.data.keywords);

  CategoryModelSet models;
  if (message_level) {
    require_file(corpus_path);
    const auto corpus = read_corpus_file(corpus_path);
    models = train_message_models(labels, corpus, cfg.train.per_sender,
                                  vocabs, keywords, cfg.train_hyper(), seed,
                                  threads);
  } else {
    const auto aggregates = load_aggregates(aggregates_path);
    const auto examples =
        sender_examples(labels, aggregates, vocabs, keywords,
                        cfg.burst_config(), with_folder_features);
    models = train_one_vs_all(examples, cfg.train_hyper(), seed, threads);
  }
  write_model_set(out_dir, models);
  std::cout << "train: " << models.models.size() << " models -> " << out_dir
            << '\n';
  return 0;
}

int cmd_build_table(const PipelineConfig& cfg, const std::string& models_dir,
                    const std::string& aggregates_path,
                    const std::string& vocab_dir, const std::string& out,
                    double cutoff) {
  const auto models = read_model_set(models_dir);
  const auto aggregates = load_aggregates(aggregates_path);
  const auto vocabs = load_vocab_dir(vocab_dir);
  const auto keywords = CommercialKeywordList::load(cfg.data.keywords);
  const auto table = build_sender_table(models, aggregates, vocabs, keywords,
                                        cutoff, cfg.burst_config());
  write_sender_table_file(out, table);
  std::cout << "build-table: " << table.entries.size() << " of "
            << aggregates.size() << " senders above cutoff " << cutoff
            << " -> " << out << '\n';
  return 0;
}

int cmd_classify(const PipelineConfig& cfg, const std::string& in,
                 const std::string& table_path,
                 const std::string& msg_models_dir,
                 const std::string& aggregates_path,
                 const std::string& vocab_dir, const std::string& out,
                 const std::string& summary_path) {
  require_file(in);
  require_file(table_path);
  const auto table = read_sender_table_file(table_path);
  const auto msg_models = read_model_set(msg_models_dir);
  const auto aggregates = load_aggregates(aggregates_path);
  const auto vocabs = load_vocab_dir(vocab_dir);
  const auto keywords = CommercialKeywordList::load(cfg.data.keywords);

  const auto rules = build_lightweight_rules(
      aggregates, table, cfg.cascade.top_senders, cfg.cascade.consistency);

  std::ofstream sink(out);
  if (!sink) throw DataError("cannot write " + out);
  CascadeSummary summary;
  const auto start = std::chrono::steady_clock::now();
  for_each_message(in, [&](const Message& m) {
    const auto d =
        classify_message(m, rules, table, msg_models, vocabs, keywords);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", d.confidence);
    sink << escape_field(d.id) << '\t' << to_string(d.category) << '\t' << buf
         << '\t' << to_string(d.stage) << '\n';
    ++summary.total;
    ++summary.by_stage[static_cast<std::size_t>(d.stage)];
  });
  summary.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!summary_path.empty()) write_cascade_summary(summary_path, summary);
  std::cout << "classify: " << summary.total << " decisions, lightweight "
            << summary.stage_share(Stage::lightweight) << ", table "
            << summary.stage_share(Stage::sender_table) << ", heavy "
            << summary.stage_share(Stage::heavyweight) << " -> " << out
            << '\n';
  return 0;
}

int cmd_evaluate(const PipelineConfig& cfg, const std::string& labeled_path,
                 const std::string& aggregates_path,
                 const std::string& vocab_dir, const std::string& out_dir,
                 std::uint64_t seed, unsigned threads) {
  const auto labels = labels_from_file(labeled_path);
  const auto aggregates = load_aggregates(aggregates_path);
  const auto vocabs = load_vocab_dir(vocab_dir);
  const auto keywords = CommercialKeywordList::load(cfg.data.keywords);

  std::vector<std::string> senders;
  for (const auto& [canonical, cat] : labels)
    if (aggregates.count(canonical)) senders.push_back(canonical);
  std::sort(senders.begin(), senders.end());
  const auto plan =
      split_by_domain(senders, cfg.eval.fraction, cfg.eval.repeats, seed);

  EvalOptions options;
  options.hyper = cfg.train_hyper();
  options.bursts = cfg.burst_config();
  options.seed = seed;
  options.threads = threads;

  fs::create_directories(out_dir);
  const auto table =
      run_ablation(labels, aggregates, vocabs, keywords,
                   FeatureSubset::standard_columns(), plan, options);
  write_auc_table_file(out_dir + "/ablation_auc.tsv", table);

  const auto curves = evaluate_curves(labels, aggregates, vocabs, keywords,
                                      plan, options);
  std::ofstream auc_out(out_dir + "/auc.tsv");
  auc_out << "category\tauc\n";
  for (const auto& [cat, report] : curves.per_repeat_merged) {
    auc_out << to_string(cat) << '\t' << report.auc << '\n';
    std::vector<std::pair<double, double>> roc_pts, pr_pts;
    std::ofstream pts(out_dir + "/roc_" + std::string(to_string(cat)) +
                      ".tsv");
    pts << "fpr\ttpr\n";
    for (const auto& p : report.roc) {
      pts << p.fpr << '\t' << p.tpr << '\n';
      roc_pts.emplace_back(p.fpr, p.tpr);
    }
    for (const auto& p : report.pr) pr_pts.emplace_back(p.recall, p.precision);
    write_curve_svg(out_dir + "/roc_" + std::string(to_string(cat)) + ".svg",
                    roc_pts, "ROC " + std::string(to_string(cat)));
    write_curve_svg(out_dir + "/pr_" + std::string(to_string(cat)) + ".svg",
                    pr_pts, "PR " + std::string(to_string(cat)));
  }
  std::cout << "evaluate: ablation and curves -> " << out_dir << '\n';
  return 0;
}

int cmd_report(const PipelineConfig& cfg, const std::string& decisions_path,
               const std::string& aggregates_path,
               const std::string& labeled_path, const std::string& out_dir) {
  fs::create_directories(out_dir);
  if (!decisions_path.empty()) {
    require_file(decisions_path);
    const auto decisions = read_decisions_file(decisions_path);
    write_coverage_report_file(out_dir + "/coverage.tsv",
                               coverage_report(decisions));
  }
  if (!aggregates_path.empty() && !labeled_path.empty()) {
    const auto aggregates = load_aggregates(aggregates_path);
    const auto labels = labels_from_file(labeled_path);
    const auto first_names = load_word_list(cfg.data.first_names);
    write_human_machine_stats_file(
        out_dir + "/human_machine_stats.tsv",
        human_machine_stats(aggregates, labels, first_names));
  }
  std::cout << "report -> " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mailcat: latent-category email classification pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "pipeline config JSON");
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "random seed (overrides config)");
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = hardware)");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  std::string synth_out = "out";
  std::uint64_t synth_senders = 10000;
  double synth_mps = 25.0;
  synth->add_option("--out", synth_out, "output directory");
  synth->add_option("--senders", synth_senders, "total sender count");
  synth->add_option("--messages-per-sender", synth_mps, "mean volume");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate and normalize a corpus");
  std::string in_path, out_path;
  ingest->add_option("--in", in_path, "corpus file")->required();
  ingest->add_option("--out", out_path, "normalized output")->required();

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "roll up by sender");
  std::string agg_in, agg_out = "aggregates.tsv";
  std::int64_t agg_min = -1;
  aggregate->add_option("--in", agg_in, "corpus file")->required();
  aggregate->add_option("--out", agg_out, "aggregates snapshot");
  aggregate->add_option("--min-messages", agg_min,
                        "sender floor (default from config)");

  // vocab
  auto* vocab = app.add_subcommand("vocab", "build pruned vocabularies");
  std::string vocab_agg, vocab_out = "vocab";
  vocab->add_option("--aggregates", vocab_agg, "aggregates snapshot")
      ->required();
  vocab->add_option("--out", vocab_out, "output directory");

  // lda
  auto* lda = app.add_subcommand("lda", "folder documents and topics");
  std::string lda_in, lda_vocab = "vocab", lda_out = "lda";
  std::vector<int> lda_candidates;
  lda->add_option("--in", lda_in, "corpus file")->required();
  lda->add_option("--vocab", lda_vocab, "vocabulary directory");
  lda->add_option("--out", lda_out, "output directory");
  lda->add_option("--k-candidates", lda_candidates,
                  "coverage report over these K values instead of training");

  // label
  auto* label = app.add_subcommand("label", "multi-source sender labeling");
  std::string label_agg, label_vocab = "vocab", label_mixtures,
              label_topic_labels, label_manual, label_out = "labeled.tsv",
              label_conflicts = "conflicts.tsv";
  label->add_option("--aggregates", label_agg)->required();
  label->add_option("--vocab", label_vocab);
  label->add_option("--mixtures", label_mixtures, "LDA mixtures file");
  label->add_option("--topic-labels", label_topic_labels);
  label->add_option("--manual", label_manual, "manual labels import");
  label->add_option("--out", label_out);
  label->add_option("--conflicts", label_conflicts);

  // train
  auto* train = app.add_subcommand("train", "one-vs-all category models");
  std::string train_labeled, train_agg, train_vocab = "vocab",
              train_out = "models", train_corpus;
  bool train_message_level = false, train_with_folders = false;
  train->add_option("--labeled", train_labeled)->required();
  train->add_option("--aggregates", train_agg);
  train->add_option("--vocab", train_vocab);
  train->add_option("--out", train_out);
  train->add_flag("--message-level", train_message_level,
                  "train message models instead of sender models");
  train->add_option("--in", train_corpus, "corpus (message-level only)");
  train->add_flag("--with-folder-features", train_with_folders,
                  "keep folder features (human-vs-machine runs)");

  // build-table
  auto* build_table = app.add_subcommand("build-table", "offline sender table");
  std::string bt_models = "models", bt_agg, bt_vocab = "vocab",
              bt_out = "sender_table.tsv";
  double bt_cutoff = -1;
  build_table->add_option("--models", bt_models);
  build_table->add_option("--aggregates", bt_agg)->required();
  build_table->add_option("--vocab", bt_vocab);
  build_table->add_option("--out", bt_out);
  build_table->add_option("--cutoff", bt_cutoff, "confidence cutoff");

  // classify
  auto* classify = app.add_subcommand("classify", "3-stage online cascade");
  std::string cls_in, cls_table = "sender_table.tsv",
              cls_models = "msg_models", cls_agg, cls_vocab = "vocab",
              cls_out = "decisions.tsv", cls_summary = "summary.json";
  classify->add_option("--in", cls_in)->required();
  classify->add_option("--table", cls_table);
  classify->add_option("--msg-models", cls_models);
  classify->add_option("--aggregates", cls_agg)->required();
  classify->add_option("--vocab", cls_vocab);
  classify->add_option("--out", cls_out);
  classify->add_option("--summary", cls_summary);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "AUC table and curves");
  std::string eval_labeled, eval_agg, eval_vocab = "vocab",
              eval_out = "eval";
  evaluate->add_option("--labeled", eval_labeled)->required();
  evaluate->add_option("--aggregates", eval_agg)->required();
  evaluate->add_option("--vocab", eval_vocab);
  evaluate->add_option("--out", eval_out);

  // report
  auto* report = app.add_subcommand("report", "coverage and class statistics");
  std::string rep_decisions, rep_agg, rep_labeled, rep_out = "reports";
  report->add_option("--decisions", rep_decisions);
  report->add_option("--aggregates", rep_agg);
  report->add_option("--labeled", rep_labeled);
  report->add_option("--out", rep_out);

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = load_config_opt(config_path);
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--threads")) cfg.threads = threads;
    seed = cfg.seed;
    threads = cfg.threads;

    if (*synth) {
      const auto n =
          synth->count("--senders") ? synth_senders : cfg.synth.senders;
      const auto mps = synth->count("--messages-per-sender")
                           ? synth_mps
                           : cfg.synth.messages_per_sender;
      return cmd_synth(cfg, synth_out, seed, n, mps);
    }
    if (*ingest) return cmd_ingest(in_path, out_path);
    if (*aggregate)
      return cmd_aggregate(agg_in, agg_out,
                           agg_min >= 0
                               ? static_cast<std::uint64_t>(agg_min)
                               : cfg.aggregate.min_messages);
    if (*vocab) return cmd_vocab(cfg, vocab_agg, vocab_out);
    if (*lda) return cmd_lda(cfg, lda_in, lda_vocab, lda_out, lda_candidates,
                             seed);
    if (*label)
      return cmd_label(cfg, label_agg, label_vocab, label_mixtures,
                       label_topic_labels, label_manual, label_out,
                       label_conflicts);
    if (*train)
      return cmd_train(cfg, train_labeled, train_agg, train_vocab, train_out,
                       train_message_level, train_corpus, seed, threads,
                       train_with_folders);
    if (*build_table)
      return cmd_build_table(cfg, bt_models, bt_agg, bt_vocab, bt_out,
                             bt_cutoff > 0 ? bt_cutoff
                                           : cfg.train.table_cutoff);
    if (*classify)
      return cmd_classify(cfg, cls_in, cls_table, cls_models, cls_agg,
                          cls_vocab, cls_out, cls_summary);
    if (*evaluate)
      return cmd_evaluate(cfg, eval_labeled, eval_agg, eval_vocab, eval_out,
                          seed, threads);
    if (*report)
      return cmd_report(cfg, rep_decisions, rep_agg, rep_labeled, rep_out);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
