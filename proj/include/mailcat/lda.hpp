#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mailcat/category.hpp"
#include "mailcat/folder_docs.hpp"
#include "mailcat/vocab.hpp"

namespace mailcat {

// Online variational Bayes hyperparameters. alpha/eta of 0 mean 1/K.
struct LdaHyper {
  double alpha = 0.0;
  double eta = 0.0;
  double tau0 = 1.0;     // learning rate (tau0 + t)^-kappa
  double kappa = 0.7;
  int batch_size = 64;
  int epochs = 40;       // passes over the document set
  int e_max_iters = 100;
  double e_tol = 1e-4;   // mean absolute gamma change per topic
};

struct TopicModel {
  int k = 0;
  std::vector<std::string> terms;  // dense term order, index = column
  Eigen::MatrixXd lambda;          // K x V variational parameters
  Eigen::MatrixXd topic_word;      // K x V, rows sum to 1
  Eigen::MatrixXd doc_mixtures;    // D x K, rows sum to 1
  std::vector<std::string> doc_names;
  LdaHyper hyper;
  std::uint64_t seed = 0;

  double alpha() const { return hyper.alpha > 0 ? hyper.alpha : 1.0 / k; }
  double eta() const { return hyper.eta > 0 ? hyper.eta : 1.0 / k; }

  // Indices of the top-n words of one topic, by probability.
  std::vector<std::size_t> top_words(int topic, std::size_t n) const;
};

// Builds a vocabulary directly from a term list (dense indices in the
// given order); used when the LDA term space is constructed by hand.
Vocabulary make_vocabulary(VocabKind kind, std::vector<std::string> terms);

// Trains online variational Bayes over mini-batches of folder documents.
// Tokens outside `vocab` are dropped. Deterministic for a fixed seed.
// Throws std::invalid_argument when K < 2, K > #docs or vocab is empty.
TopicModel train_lda(const std::vector<FolderDocument>& docs,
                     const Vocabulary& vocab, int k, const LdaHyper& hyper,
                     std::uint64_t seed);

// Variational inference with frozen topics; returns a distribution over
// topics. An empty document yields the normalized prior.
Eigen::VectorXd infer_topic_mixture(const TopicModel& model,
                                    const FolderDocument& doc);

struct CoverageReport {
  int k = 0;
  std::vector<double> per_topic;  // traffic-weight mass per topic
  double total = 0;
};

// A document contributes its traffic weight to every topic whose mixture
// mass strictly exceeds `threshold`.
CoverageReport topic_coverage(const TopicModel& model,
                              const std::vector<FolderDocument>& docs,
                              double threshold = 0.5);

// One model per candidate K; reports coverage so a human can choose.
std::vector<CoverageReport> select_k(const std::vector<FolderDocument>& docs,
                                     const Vocabulary& vocab,
                                     const std::vector<int>& candidates,
                                     const LdaHyper& hyper, std::uint64_t seed,
                                     double threshold = 0.5);

void write_topic_model_file(const std::string& path, const TopicModel& model);
TopicModel read_topic_model_file(const std::string& path);

// Top-N words per topic with probabilities.
void write_topics_dump(const std::string& path, const TopicModel& model,
                       std::size_t top_n = 10);
// `folder  topic:weight ...` rows.
void write_mixtures_file(const std::string& path, const TopicModel& model);
// Per-folder mixtures keyed by folder name, loaded back for soft voting.
std::map<std::string, Eigen::VectorXd> read_mixtures_file(
    const std::string& path);

void write_coverage_file(const std::string& path,
                         const std::vector<CoverageReport>& reports);

// Topic -> category assignment (one label per topic line: `index  label`).
std::vector<Category> read_topic_labels(const std::string& path, int k);
void write_topic_labels(const std::string& path,
                        const std::vector<Category>& labels);

// Suggests a topic -> category assignment: every folder in the labeled
// list votes its label onto topics with its mixture mass times its traffic;
// a topic carried mostly by unlabeled folders is called human. The output
// is a starting point for the label file, not a final judgement.
std::vector<Category> assign_topic_labels_from_folders(
    const TopicModel& model, const std::vector<FolderDocument>& docs,
    const std::map<std::string, Category>& labeled_folders);

}  // namespace mailcat
