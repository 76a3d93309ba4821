#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mailcat/features.hpp"
#include "mailcat/folder_docs.hpp"
#include "mailcat/lda.hpp"
#include "mailcat/models.hpp"
#include "mailcat/vocab.hpp"

namespace mailcat {

// All pipeline knobs with documented defaults (full-scale values where the
// source material names one; desk runs override via a JSON config file).
struct PipelineConfig {
  std::uint64_t seed = 42;
  unsigned threads = 0;

  struct Data {
    std::string stopwords = "data/stopwords_en.txt";
    std::string keywords = "data/commercial_keywords.txt";
    std::string first_names = "data/first_names.txt";
    std::string reserved_names = "data/reserved_names.txt";
    std::string labeled_folders = "data/labeled_folders.tsv";
    std::string third_party_folders = "data/third_party_folders.txt";
  } data;

  struct Synth {
    std::uint64_t senders = 10000;
    double messages_per_sender = 25.0;
    double human_share = 0.10;
    double folder_user_share = 0.10;
    double mixed_sender_rate = 0.02;
    double mixed_message_rate = 0.10;
  } synth;

  struct Aggregate {
    std::uint64_t min_messages = 3;
  } aggregate;

  struct Vocab {
    std::uint32_t content_top = 400;
    std::uint64_t content_min_senders = 100;
    std::uint32_t address_top = 800;
    std::uint64_t address_min_senders = 100;
    std::uint32_t folder_top = 50;
    std::uint64_t folder_min_senders = 100;
  } vocab;

  struct Lda {
    int k = 6;
    std::uint64_t folder_floor = 1000;
    int epochs = 40;
    int batch_size = 64;
    double tau0 = 1.0;
    double kappa = 0.7;
    double alpha = 0.0;  // 0 -> 1/K
    double eta = 0.0;
    double coverage_threshold = 0.5;
  } lda;

  struct LabelCfg {
    std::uint64_t tau_v = 50;
    std::uint64_t tau_f = 2;
    double lda_threshold = 0.8;
    double unsubscribe_ratio = 0.5;
    double spam_vote_ratio = 0.05;
    int cotrain_rounds = 4;
    double cotrain_threshold = 0.9;
  } label;

  struct Train {
    int hash_bits = 18;
    int epochs = 5;
    double lr0 = 0.1;
    double l2 = 1e-6;
    int per_sender = 5;
    double table_cutoff = 0.9;
  } train;

  struct Cascade {
    std::size_t top_senders = 100;
    double consistency = 0.99;
  } cascade;

  struct Eval {
    double fraction = 0.65;
    int repeats = 5;
    std::size_t testset_n = 600;
    double monthly_cutoff = 100000;
    std::uint64_t never_replied_cutoff = 1000;
  } eval;

  std::vector<std::uint32_t> burst_ladder = {10, 60, 80, 100, 120};

  VocabConfig vocab_config() const;
  LdaHyper lda_hyper() const;
  TrainHyper train_hyper() const;
  BurstConfig burst_config() const;
};

// Parses the JSON config; unknown keys are rejected with their paths.
PipelineConfig load_pipeline_config(const std::string& path);

}  // namespace mailcat
