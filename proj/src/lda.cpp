#include "mailcat/lda.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mailcat/text.hpp"

namespace mailcat {

namespace {

double digamma(double x) {
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  result += std::log(x) - 0.5 * inv;
  const double inv2 = inv * inv;
  result -= inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 -
                    inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return result;
}

// E[log X_k] for X ~ Dirichlet(v), applied per row.
Eigen::MatrixXd dirichlet_expectation_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double dg_sum = digamma(m.row(r).sum());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = digamma(m(r, c)) - dg_sum;
  }
  return out;
}

Eigen::VectorXd dirichlet_expectation(const Eigen::VectorXd& v) {
  const double dg_sum = digamma(v.sum());
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = digamma(v(i)) - dg_sum;
  return out;
}

struct BowDoc {
  std::vector<int> ids;
  Eigen::VectorXd counts;
};

BowDoc to_bow(const FolderDocument& doc, const Vocabulary& vocab) {
  BowDoc bow;
  std::vector<double> counts;
  for (const auto& [term, count] : doc.token_counts) {
    const auto it = vocab.index.find(term);
    if (it == vocab.index.end()) continue;
    bow.ids.push_back(static_cast<int>(it->second));
    counts.push_back(static_cast<double>(count));
  }
  bow.counts = Eigen::Map<Eigen::VectorXd>(counts.data(),
                                           static_cast<Eigen::Index>(counts.size()));
  return bow;
}

// Variational E-step for one document against fixed expElogbeta.
// Returns gamma; fills phi_contrib = expElogtheta outer (cts / phinorm)
// when sstats is non-null.
Eigen::VectorXd e_step(const BowDoc& bow, const Eigen::MatrixXd& exp_elog_beta,
                       double alpha, int max_iters, double tol,
                       Eigen::MatrixXd* sstats) {
  const auto k = exp_elog_beta.rows();
  Eigen::VectorXd gamma = Eigen::VectorXd::Ones(k);
  if (bow.ids.empty()) {
    gamma.array() = alpha;
    return gamma;
  }

  Eigen::MatrixXd beta_d(k, static_cast<Eigen::Index>(bow.ids.size()));
  for (std::size_t i = 0; i < bow.ids.size(); ++i)
    beta_d.col(static_cast<Eigen::Index>(i)) = exp_elog_beta.col(bow.ids[i]);

  Eigen::VectorXd exp_elog_theta = dirichlet_expectation(gamma).array().exp();
  Eigen::VectorXd phinorm, ratio;
  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::VectorXd last = gamma;
    phinorm = (beta_d.transpose() * exp_elog_theta).array() + 1e-100;
    ratio = bow.counts.array() / phinorm.array();
    gamma = (exp_elog_theta.array() *
             (beta_d * ratio).array()).matrix();
    gamma.array() += alpha;
    exp_elog_theta = dirichlet_expectation(gamma).array().exp();
    if ((gamma - last).cwiseAbs().mean() < tol) break;
  }
  if (sstats) {
    phinorm = (beta_d.transpose() * exp_elog_theta).array() + 1e-100;
    ratio = bow.counts.array() / phinorm.array();
    for (std::size_t i = 0; i < bow.ids.size(); ++i)
      sstats->col(bow.ids[i]) += exp_elog_theta * ratio(static_cast<Eigen::Index>(i));
  }
  return gamma;
}

}  // namespace

Vocabulary make_vocabulary(VocabKind kind, std::vector<std::string> terms) {
  Vocabulary vocab;
  vocab.kind = kind;
  std::uint32_t next = 0;
  for (auto& t : terms) {
    if (vocab.index.count(t)) continue;
    vocab.index.emplace(t, next++);
    vocab.sender_counts.emplace(t, 0);
  }
  return vocab;
}

std::vector<std::size_t> TopicModel::top_words(int topic,
                                               std::size_t n) const {
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double pa = topic_word(topic, static_cast<Eigen::Index>(a));
    const double pb = topic_word(topic, static_cast<Eigen::Index>(b));
    if (pa != pb) return pa > pb;
    return terms[a] < terms[b];
  });
  order.resize(std::min(n, order.size()));
  return order;
}

TopicModel train_lda(const std::vector<FolderDocument>& docs,
                     const Vocabulary& vocab, int k, const LdaHyper& hyper,
                     std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("train_lda: K must be >= 2");
  if (static_cast<std::size_t>(k) > docs.size())
    throw std::invalid_argument("train_lda: K exceeds document count");
  if (vocab.index.empty())
    throw std::invalid_argument("train_lda: empty vocabulary");

  TopicModel model;
  model.k = k;
  model.hyper = hyper;
  model.seed = seed;
  model.terms.resize(vocab.index.size());
  for (const auto& [term, idx] : vocab.index) model.terms[idx] = term;

  const auto v = static_cast<Eigen::Index>(model.terms.size());
  const double alpha = model.alpha();
  const double eta = model.eta();
  const auto d_total = static_cast<double>(docs.size());

  std::vector<BowDoc> bows;
  bows.reserve(docs.size());
  for (const auto& d : docs) bows.push_back(to_bow(d, vocab));

  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma_init(100.0, 0.01);
  model.lambda.resize(k, v);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < v; ++c) model.lambda(r, c) = gamma_init(rng);

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);

  std::int64_t updates = 0;
  const std::size_t batch_size =
      std::max<std::size_t>(1, static_cast<std::size_t>(hyper.batch_size));
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      const Eigen::MatrixXd exp_elog_beta =
          dirichlet_expectation_rows(model.lambda).array().exp();
      Eigen::MatrixXd sstats = Eigen::MatrixXd::Zero(k, v);
      for (std::size_t i = start; i < end; ++i)
        e_step(bows[order[i]], exp_elog_beta, alpha, hyper.e_max_iters,
               hyper.e_tol, &sstats);
      sstats.array() *= exp_elog_beta.array();

      const double rho =
          std::pow(hyper.tau0 + static_cast<double>(updates), -hyper.kappa);
      const double scale = d_total / static_cast<double>(end - start);
      model.lambda = (1.0 - rho) * model.lambda +
                     rho * (Eigen::MatrixXd::Constant(k, v, eta) +
                            scale * sstats);
      ++updates;
    }
  }

  model.topic_word.resize(k, v);
  for (Eigen::Index r = 0; r < k; ++r)
    model.topic_word.row(r) = model.lambda.row(r) / model.lambda.row(r).sum();

  const Eigen::MatrixXd exp_elog_beta =
      dirichlet_expectation_rows(model.lambda).array().exp();
  model.doc_mixtures.resize(static_cast<Eigen::Index>(docs.size()), k);
  model.doc_names.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Eigen::VectorXd gamma =
        e_step(bows[d], exp_elog_beta, alpha, hyper.e_max_iters, hyper.e_tol,
               nullptr);
    model.doc_mixtures.row(static_cast<Eigen::Index>(d)) =
        (gamma / gamma.sum()).transpose();
    model.doc_names.push_back(docs[d].name);
  }
  return model;
}

Eigen::VectorXd infer_topic_mixture(const TopicModel& model,
                                    const FolderDocument& doc) {
  Vocabulary vocab;
  vocab.kind = VocabKind::content;
  for (std::size_t i = 0; i < model.terms.size(); ++i)
    vocab.index.emplace(model.terms[i], static_cast<std::uint32_t>(i));
  const auto bow = to_bow(doc, vocab);
  const Eigen::MatrixXd exp_elog_beta =
      dirichlet_expectation_rows(model.lambda).array().exp();
  const Eigen::VectorXd gamma =
      e_step(bow, exp_elog_beta, model.alpha(), model.hyper.e_max_iters,
             model.hyper.e_tol, nullptr);
  return gamma / gamma.sum();
}

CoverageReport topic_coverage(const TopicModel& model,
                              const std::vector<FolderDocument>& docs,
                              double threshold) {
  if (threshold <= 0.0 || threshold > 1.0)
    throw std::invalid_argument("topic_coverage: threshold must be in (0,1]");
  CoverageReport report;
  report.k = model.k;
  report.per_topic.assign(static_cast<std::size_t>(model.k), 0.0);
  for (const auto& doc : docs) {
    const Eigen::VectorXd mix = infer_topic_mixture(model, doc);
    for (int t = 0; t < model.k; ++t)
      if (mix(t) > threshold)
        report.per_topic[static_cast<std::size_t>(t)] += doc.traffic_weight;
  }
  for (double c : report.per_topic) report.total += c;
  return report;
}

std::vector<CoverageReport> select_k(const std::vector<FolderDocument>& docs,
                                     const Vocabulary& vocab,
                                     const std::vector<int>& candidates,
                                     const LdaHyper& hyper, std::uint64_t seed,
                                     double threshold) {
  if (candidates.empty())
    throw std::invalid_argument("select_k: no candidates");
  std::vector<CoverageReport> reports;
  for (int k : candidates) {
    const auto model = train_lda(docs, vocab, k, hyper, seed);
    reports.push_back(topic_coverage(model, docs, threshold));
  }
  return reports;
}

// ---- files ---------------------------------------------------------------

namespace {
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_topic_model_file(const std::string& path, const TopicModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topic model: " + path);
  out << "mailcat-lda v1\n";
  out << "k\t" << model.k << "\nvocab\t" << model.terms.size() << "\nseed\t"
      << model.seed << '\n';
  const auto& h = model.hyper;
  out << "hyper\t" << fmt17(h.alpha) << '\t' << fmt17(h.eta) << '\t'
      << fmt17(h.tau0) << '\t' << fmt17(h.kappa) << '\t' << h.batch_size
      << '\t' << h.epochs << '\t' << h.e_max_iters << '\t' << fmt17(h.e_tol)
      << '\n';
  for (const auto& t : model.terms) out << escape_field(t) << '\n';
  for (Eigen::Index r = 0; r < model.lambda.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.lambda.cols(); ++c)
      out << (c ? "\t" : "") << fmt17(model.lambda(r, c));
    out << '\n';
  }
  out << "docs\t" << model.doc_names.size() << '\n';
  for (std::size_t d = 0; d < model.doc_names.size(); ++d) {
    out << escape_field(model.doc_names[d]);
    for (Eigen::Index c = 0; c < model.doc_mixtures.cols(); ++c)
      out << '\t' << fmt17(model.doc_mixtures(static_cast<Eigen::Index>(d), c));
    out << '\n';
  }
}

TopicModel read_topic_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topic model: " + path);
  std::string line;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line))
      throw std::runtime_error("truncated topic model file: " + path);
    return line;
  };
  if (next_line() != "mailcat-lda v1")
    throw std::runtime_error("bad topic model header in " + path);

  TopicModel model;
  std::size_t vocab_size = 0;
  {
    auto f = split_record(next_line());
    model.k = std::stoi(f.at(1));
    f = split_record(next_line());
    vocab_size = std::stoul(f.at(1));
    f = split_record(next_line());
    model.seed = std::stoull(f.at(1));
    f = split_record(next_line());
    model.hyper.alpha = std::stod(f.at(1));
    model.hyper.eta = std::stod(f.at(2));
    model.hyper.tau0 = std::stod(f.at(3));
    model.hyper.kappa = std::stod(f.at(4));
    model.hyper.batch_size = std::stoi(f.at(5));
    model.hyper.epochs = std::stoi(f.at(6));
    model.hyper.e_max_iters = std::stoi(f.at(7));
    model.hyper.e_tol = std::stod(f.at(8));
  }
  model.terms.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i)
    model.terms.push_back(unescape_field(next_line()));
  model.lambda.resize(model.k, static_cast<Eigen::Index>(vocab_size));
  for (int r = 0; r < model.k; ++r) {
    const auto f = split_record(next_line());
    if (f.size() != vocab_size)
      throw std::runtime_error("bad lambda row in " + path);
    for (std::size_t c = 0; c < vocab_size; ++c)
      model.lambda(r, static_cast<Eigen::Index>(c)) = std::stod(f[c]);
  }
  const auto docs_hdr = split_record(next_line());
  const auto n_docs = std::stoul(docs_hdr.at(1));
  model.doc_mixtures.resize(static_cast<Eigen::Index>(n_docs), model.k);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const auto f = split_record(next_line());
    if (f.size() != static_cast<std::size_t>(model.k) + 1)
      throw std::runtime_error("bad mixture row in " + path);
    model.doc_names.push_back(unescape_field(f[0]));
    for (int c = 0; c < model.k; ++c)
      model.doc_mixtures(static_cast<Eigen::Index>(d), c) =
          std::stod(f[static_cast<std::size_t>(c) + 1]);
  }
  model.topic_word.resize(model.k, model.lambda.cols());
  for (Eigen::Index r = 0; r < model.lambda.rows(); ++r)
    model.topic_word.row(r) = model.lambda.row(r) / model.lambda.row(r).sum();
  return model;
}

void write_topics_dump(const std::string& path, const TopicModel& model,
                       std::size_t top_n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topics dump: " + path);
  for (int t = 0; t < model.k; ++t) {
    out << "topic " << t;
    for (auto w : model.top_words(t, top_n))
      out << '\t' << escape_field(model.terms[w]) << ' '
          << fmt17(model.topic_word(t, static_cast<Eigen::Index>(w)));
    out << '\n';
  }
}

void write_mixtures_file(const std::string& path, const TopicModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mixtures: " + path);
  for (std::size_t d = 0; d < model.doc_names.size(); ++d) {
    out << escape_field(model.doc_names[d]);
    for (Eigen::Index c = 0; c < model.doc_mixtures.cols(); ++c)
      out << '\t' << c << ':'
          << fmt17(model.doc_mixtures(static_cast<Eigen::Index>(d), c));
    out << '\n';
  }
}

std::map<std::string, Eigen::VectorXd> read_mixtures_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mixtures: " + path);
  std::map<std::string, Eigen::VectorXd> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_record(line);
    Eigen::VectorXd mix(static_cast<Eigen::Index>(f.size() - 1));
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto colon = f[i].find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("bad mixture entry '" + f[i] + "'");
      mix(static_cast<Eigen::Index>(i - 1)) =
          std::stod(f[i].substr(colon + 1));
    }
    out.emplace(unescape_field(f[0]), std::move(mix));
  }
  return out;
}

void write_coverage_file(const std::string& path,
                         const std::vector<CoverageReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write coverage: " + path);
  out << "k\ttotal\tper_topic\n";
  for (const auto& r : reports) {
    out << r.k << '\t' << fmt17(r.total);
    for (double c : r.per_topic) out << '\t' << fmt17(c);
    out << '\n';
  }
}

std::vector<Category> read_topic_labels(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topic labels: " + path);
  std::vector<Category> labels(static_cast<std::size_t>(k), Category::other);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_record(line);
    if (f.size() != 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected `index<TAB>label`");
    const int idx = std::stoi(f[0]);
    const auto cat = parse_category(f[1]);
    if (idx < 0 || idx >= k || !cat)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad topic index or label");
    labels[static_cast<std::size_t>(idx)] = *cat;
    seen[static_cast<std::size_t>(idx)] = true;
  }
  for (int t = 0; t < k; ++t)
    if (!seen[static_cast<std::size_t>(t)])
      throw std::runtime_error(path + ": missing label for topic " +
                               std::to_string(t));
  return labels;
}

void write_topic_labels(const std::string& path,
                        const std::vector<Category>& labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topic labels: " + path);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << '\t' << to_string(labels[i]) << '\n';
}

std::vector<Category> assign_topic_labels_from_folders(
    const TopicModel& model, const std::vector<FolderDocument>& docs,
    const std::map<std::string, Category>& labeled_folders) {
  const auto k = static_cast<std::size_t>(model.k);
  std::vector<std::map<Category, double>> labeled_mass(k);
  std::vector<double> unlabeled_mass(k, 0.0);

  for (const auto& doc : docs) {
    const Eigen::VectorXd mix = infer_topic_mixture(model, doc);
    const auto it = labeled_folders.find(doc.name);
    const double weight = static_cast<double>(doc.message_count);
    for (std::size_t t = 0; t < k; ++t) {
      const double mass = mix(static_cast<Eigen::Index>(t)) * weight;
      if (it != labeled_folders.end())
        labeled_mass[t][it->second] += mass;
      else
        unlabeled_mass[t] += mass;
    }
  }

  std::vector<Category> labels(k, Category::human);
  for (std::size_t t = 0; t < k; ++t) {
    Category best = Category::other;
    double best_mass = 0.0;
    for (const auto& [cat, mass] : labeled_mass[t]) {
      if (mass > best_mass) {
        best = cat;
        best_mass = mass;
      }
    }
    labels[t] = unlabeled_mass[t] > best_mass ? Category::human : best;
  }
  return labels;
}

}  // namespace mailcat
