#include "mailcat/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mailcat {

VocabConfig PipelineConfig::vocab_config() const {
  VocabConfig cfg;
  cfg.content_top = vocab.content_top;
  cfg.content_min_senders = vocab.content_min_senders;
  cfg.address_top = vocab.address_top;
  cfg.address_min_senders = vocab.address_min_senders;
  cfg.folder_top = vocab.folder_top;
  cfg.folder_min_senders = vocab.folder_min_senders;
  cfg.stop_words = load_word_list(data.stopwords);
  return cfg;
}

LdaHyper PipelineConfig::lda_hyper() const {
  LdaHyper h;
  h.alpha = lda.alpha;
  h.eta = lda.eta;
  h.tau0 = lda.tau0;
  h.kappa = lda.kappa;
  h.batch_size = lda.batch_size;
  h.epochs = lda.epochs;
  return h;
}

TrainHyper PipelineConfig::train_hyper() const {
  TrainHyper h;
  h.hash_bits = train.hash_bits;
  h.sgd.epochs = train.epochs;
  h.sgd.lr0 = train.lr0;
  h.sgd.l2 = train.l2;
  return h;
}

BurstConfig PipelineConfig::burst_config() const {
  BurstConfig b;
  b.ladder = burst_ladder;
  return b;
}

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& prefix,
                    std::vector<std::string>& offenders) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) offenders.push_back(prefix + key);
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }

  std::vector<std::string> offenders;
  reject_unknown(j,
                 {"seed", "threads", "data", "synth", "aggregate", "vocab",
                  "lda", "label", "train", "cascade", "eval", "burst_ladder"},
                 "", offenders);

  PipelineConfig cfg;
  get_to(j, "seed", cfg.seed);
  get_to(j, "threads", cfg.threads);
  get_to(j, "burst_ladder", cfg.burst_ladder);

  if (j.contains("data")) {
    const auto& d = j["data"];
    reject_unknown(d,
                   {"stopwords", "keywords", "first_names", "reserved_names",
                    "labeled_folders", "third_party_folders"},
                   "data.", offenders);
    get_to(d, "stopwords", cfg.data.stopwords);
    get_to(d, "keywords", cfg.data.keywords);
    get_to(d, "first_names", cfg.data.first_names);
    get_to(d, "reserved_names", cfg.data.reserved_names);
    get_to(d, "labeled_folders", cfg.data.labeled_folders);
    get_to(d, "third_party_folders", cfg.data.third_party_folders);
  }
  if (j.contains("synth")) {
    const auto& s = j["synth"];
    reject_unknown(s,
                   {"senders", "messages_per_sender", "human_share",
                    "folder_user_share", "mixed_sender_rate",
                    "mixed_message_rate"},
                   "synth.", offenders);
    get_to(s, "senders", cfg.synth.senders);
    get_to(s, "messages_per_sender", cfg.synth.messages_per_sender);
    get_to(s, "human_share", cfg.synth.human_share);
    get_to(s, "folder_user_share", cfg.synth.folder_user_share);
    get_to(s, "mixed_sender_rate", cfg.synth.mixed_sender_rate);
    get_to(s, "mixed_message_rate", cfg.synth.mixed_message_rate);
  }
  if (j.contains("aggregate")) {
    const auto& a = j["aggregate"];
    reject_unknown(a, {"min_messages"}, "aggregate.", offenders);
    get_to(a, "min_messages", cfg.aggregate.min_messages);
  }
  if (j.contains("vocab")) {
    const auto& v = j["vocab"];
    reject_unknown(v,
                   {"content_top", "content_min_senders", "address_top",
                    "address_min_senders", "folder_top", "folder_min_senders"},
                   "vocab.", offenders);
    get_to(v, "content_top", cfg.vocab.content_top);
    get_to(v, "content_min_senders", cfg.vocab.content_min_senders);
    get_to(v, "address_top", cfg.vocab.address_top);
    get_to(v, "address_min_senders", cfg.vocab.address_min_senders);
    get_to(v, "folder_top", cfg.vocab.folder_top);
    get_to(v, "folder_min_senders", cfg.vocab.folder_min_senders);
  }
  if (j.contains("lda")) {
    const auto& l = j["lda"];
    reject_unknown(l,
                   {"k", "folder_floor", "epochs", "batch_size", "tau0",
                    "kappa", "alpha", "eta", "coverage_threshold"},
                   "lda.", offenders);
    get_to(l, "k", cfg.lda.k);
    get_to(l, "folder_floor", cfg.lda.folder_floor);
    get_to(l, "epochs", cfg.lda.epochs);
    get_to(l, "batch_size", cfg.lda.batch_size);
    get_to(l, "tau0", cfg.lda.tau0);
    get_to(l, "kappa", cfg.lda.kappa);
    get_to(l, "alpha", cfg.lda.alpha);
    get_to(l, "eta", cfg.lda.eta);
    get_to(l, "coverage_threshold", cfg.lda.coverage_threshold);
  }
  if (j.contains("label")) {
    const auto& l = j["label"];
    reject_unknown(l,
                   {"tau_v", "tau_f", "lda_threshold", "unsubscribe_ratio",
                    "spam_vote_ratio", "cotrain_rounds", "cotrain_threshold"},
                   "label.", offenders);
    get_to(l, "tau_v", cfg.label.tau_v);
    get_to(l, "tau_f", cfg.label.tau_f);
    get_to(l, "lda_threshold", cfg.label.lda_threshold);
    get_to(l, "unsubscribe_ratio", cfg.label.unsubscribe_ratio);
    get_to(l, "spam_vote_ratio", cfg.label.spam_vote_ratio);
    get_to(l, "cotrain_rounds", cfg.label.cotrain_rounds);
    get_to(l, "cotrain_threshold", cfg.label.cotrain_threshold);
  }
  if (j.contains("train")) {
    const auto& t = j["train"];
    reject_unknown(
        t, {"hash_bits", "epochs", "lr0", "l2", "per_sender", "table_cutoff"},
        "train.", offenders);
    get_to(t, "hash_bits", cfg.train.hash_bits);
    get_to(t, "epochs", cfg.train.epochs);
    get_to(t, "lr0", cfg.train.lr0);
    get_to(t, "l2", cfg.train.l2);
    get_to(t, "per_sender", cfg.train.per_sender);
    get_to(t, "table_cutoff", cfg.train.table_cutoff);
  }
  if (j.contains("cascade")) {
    const auto& c = j["cascade"];
    reject_unknown(c, {"top_senders", "consistency"}, "cascade.", offenders);
    get_to(c, "top_senders", cfg.cascade.top_senders);
    get_to(c, "consistency", cfg.cascade.consistency);
  }
  if (j.contains("eval")) {
    const auto& e = j["eval"];
    reject_unknown(e,
                   {"fraction", "repeats", "testset_n", "monthly_cutoff",
                    "never_replied_cutoff"},
                   "eval.", offenders);
    get_to(e, "fraction", cfg.eval.fraction);
    get_to(e, "repeats", cfg.eval.repeats);
    get_to(e, "testset_n", cfg.eval.testset_n);
    get_to(e, "monthly_cutoff", cfg.eval.monthly_cutoff);
    get_to(e, "never_replied_cutoff", cfg.eval.never_replied_cutoff);
  }

  if (!offenders.empty()) {
    std::string msg = "unknown config keys in " + path + ":";
    for (const auto& k : offenders) msg += " " + k;
    throw std::runtime_error(msg);
  }
  return cfg;
}

}  // namespace mailcat
