#include "mailcat/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mailcat {

HashedVector hash_vector(const FeatureVector& v, const FeatureHasher& hasher) {
  HashedVector out;
  out.bits = hasher.bits;
  out.entries.reserve(v.features.size());
  for (const auto& f : v.features)
    out.entries.emplace_back(hasher.index(f.id), hasher.sign(f.id) * f.value);
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge collisions
  std::size_t w = 0;
  for (std::size_t r = 0; r < out.entries.size(); ++r) {
    if (w > 0 && out.entries[w - 1].first == out.entries[r].first) {
      out.entries[w - 1].second += out.entries[r].second;
    } else {
      out.entries[w++] = out.entries[r];
    }
  }
  out.entries.resize(w);
  return out;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticModel::margin(const HashedVector& x) const {
  if (x.bits != bits)
    throw std::invalid_argument("hash dimension mismatch: example 2^" +
                                std::to_string(x.bits) + " vs model 2^" +
                                std::to_string(bits));
  double z = bias;
  for (const auto& [i, v] : x.entries) z += weights(i) * v;
  return z;
}

double LogisticModel::prob(const HashedVector& x) const {
  return sigmoid(margin(x));
}

LogisticModel train_logistic(const std::vector<HashedVector>& examples,
                             const std::vector<std::uint8_t>& labels,
                             const SgdHyper& hyper, std::uint64_t seed) {
  if (examples.size() != labels.size())
    throw std::invalid_argument("train_logistic: size mismatch");
  if (examples.empty())
    throw std::invalid_argument("train_logistic: no examples");

  const int bits = examples.front().bits;
  LogisticModel model;
  model.bits = bits;
  model.weights = Eigen::VectorXd::Zero(1u << bits);
  model.bias = 0.0;

  // L2 via the weight-scaling trick: weights = scale * v.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(1u << bits);
  double scale = 1.0;

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);

  std::int64_t t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const auto& x = examples[idx];
      if (x.bits != bits)
        throw std::invalid_argument("train_logistic: mixed hash dimensions");
      ++t;
      const double lr = hyper.lr0 / std::sqrt(static_cast<double>(t));

      double z = model.bias;
      for (const auto& [i, val] : x.entries) z += scale * v(i) * val;
      const double g = sigmoid(z) - (labels[idx] ? 1.0 : 0.0);

      scale *= 1.0 - lr * hyper.l2;
      if (scale < 1e-9) {
        v *= scale;
        scale = 1.0;
      }
      for (const auto& [i, val] : x.entries) v(i) -= lr * g * val / scale;
      model.bias -= lr * g;
    }
  }
  model.weights = scale * v;
  return model;
}

double mean_log_loss(const LogisticModel& model,
                     const std::vector<HashedVector>& examples,
                     const std::vector<std::uint8_t>& labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const double p = model.prob(examples[i]);
    const double eps = 1e-12;
    loss -= labels[i] ? std::log(std::max(p, eps))
                      : std::log(std::max(1.0 - p, eps));
  }
  return examples.empty() ? 0.0 : loss / static_cast<double>(examples.size());
}

double dense_log_loss(const Eigen::VectorXd& params, const Eigen::MatrixXd& x,
                      const std::vector<std::uint8_t>& labels, double l2) {
  const auto d = x.cols();
  const Eigen::VectorXd w = params.head(d);
  const double bias = params(d);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double z = x.row(i).dot(w) + bias;
    const double y = labels[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    // log(1+exp(-z)) stable form
    const double softplus = z > 0 ? z + std::log1p(std::exp(-z))
                                  : std::log1p(std::exp(z));
    loss += softplus - y * z;
  }
  loss /= static_cast<double>(x.rows());
  loss += 0.5 * l2 * w.squaredNorm();
  return loss;
}

Eigen::VectorXd dense_log_loss_gradient(const Eigen::VectorXd& params,
                                        const Eigen::MatrixXd& x,
                                        const std::vector<std::uint8_t>& labels,
                                        double l2) {
  const auto d = x.cols();
  const Eigen::VectorXd w = params.head(d);
  const double bias = params(d);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(d + 1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double z = x.row(i).dot(w) + bias;
    const double y = labels[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    const double g = sigmoid(z) - y;
    grad.head(d) += g * x.row(i).transpose();
    grad(d) += g;
  }
  grad /= static_cast<double>(x.rows());
  grad.head(d) += l2 * w;
  return grad;
}

}  // namespace mailcat
