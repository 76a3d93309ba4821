#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mailcat/hashing.hpp"

namespace mailcat {

struct SgdHyper {
  int epochs = 5;
  double lr0 = 0.1;   // step t uses lr0 / sqrt(t)
  double l2 = 1e-6;
};

struct LogisticModel {
  int bits = 18;
  Eigen::VectorXd weights;  // 2^bits
  double bias = 0.0;

  double margin(const HashedVector& x) const;
  double prob(const HashedVector& x) const;  // sigmoid(margin)
};

double sigmoid(double z);

// Plain SGD on log-loss with L2, deterministic for a fixed seed (per-epoch
// shuffle comes from the seed). Labels: true = positive.
LogisticModel train_logistic(const std::vector<HashedVector>& examples,
                             const std::vector<std::uint8_t>& labels,
                             const SgdHyper& hyper, std::uint64_t seed);

// Mean log-loss over a dataset (no regularization term).
double mean_log_loss(const LogisticModel& model,
                     const std::vector<HashedVector>& examples,
                     const std::vector<std::uint8_t>& labels);

// Dense-path loss and gradient used as the analytic reference for the
// finite-difference check. The parameter vector is [w..., bias].
double dense_log_loss(const Eigen::VectorXd& params,
                      const Eigen::MatrixXd& x,
                      const std::vector<std::uint8_t>& labels, double l2);
Eigen::VectorXd dense_log_loss_gradient(const Eigen::VectorXd& params,
                                        const Eigen::MatrixXd& x,
                                        const std::vector<std::uint8_t>& labels,
                                        double l2);

}  // namespace mailcat
