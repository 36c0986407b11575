#include "clipppo/distributions.hpp"

#include <cmath>
#include <numbers>

#include "clipppo/errors.hpp"

namespace clipppo::nn {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2*pi)
}

Eigen::MatrixXd log_softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double shift = logits.row(i).maxCoeff();
    const Eigen::ArrayXd shifted = logits.row(i).transpose().array() - shift;
    const double log_sum = std::log(shifted.exp().sum());
    out.row(i) = (shifted - log_sum).transpose();
  }
  return out;
}

int sample_categorical(const Eigen::RowVectorXd& logits, Rng& rng) {
  const double shift = logits.maxCoeff();
  Eigen::ArrayXd probs = (logits.transpose().array() - shift).exp();
  probs /= probs.sum();
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (Eigen::Index a = 0; a < probs.size(); ++a) {
    cumulative += probs[a];
    if (u < cumulative) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size() - 1);
}

void categorical_logprob_entropy(const Eigen::MatrixXd& logits, const std::vector<int>& actions,
                                 Eigen::VectorXd& log_probs, Eigen::VectorXd& entropies) {
  if (static_cast<Eigen::Index>(actions.size()) != logits.rows())
    throw UsageError("categorical: one action per logits row required");
  const Eigen::MatrixXd log_p = log_softmax_rows(logits);
  log_probs.resize(logits.rows());
  entropies.resize(logits.rows());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    log_probs[i] = log_p(i, actions[static_cast<std::size_t>(i)]);
    entropies[i] = -(log_p.row(i).array().exp() * log_p.row(i).array()).sum();
  }
}

Eigen::MatrixXd categorical_backward(const Eigen::MatrixXd& logits, const std::vector<int>& actions,
                                     const Eigen::VectorXd& d_log_probs,
                                     const Eigen::VectorXd& d_entropies) {
  const Eigen::MatrixXd log_p = log_softmax_rows(logits);
  Eigen::MatrixXd d_logits = Eigen::MatrixXd::Zero(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const Eigen::ArrayXd p = log_p.row(i).transpose().array().exp();
    const double entropy = -(p * log_p.row(i).transpose().array()).sum();
    // d logprob / d logit_j = onehot_j - p_j
    d_logits.row(i) = (-d_log_probs[i] * p).matrix().transpose();
    d_logits(i, actions[static_cast<std::size_t>(i)]) += d_log_probs[i];
    // d entropy / d logit_j = -p_j (log p_j + H)
    d_logits.row(i) +=
        (d_entropies[i] * (-p * (log_p.row(i).transpose().array() + entropy))).matrix().transpose();
  }
  return d_logits;
}

Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std, Rng& rng) {
  Eigen::MatrixXd actions(means.rows(), means.cols());
  const Eigen::ArrayXd sigma = log_std.array().exp();
  for (Eigen::Index i = 0; i < means.rows(); ++i)
    for (Eigen::Index j = 0; j < means.cols(); ++j)
      actions(i, j) = means(i, j) + sigma[j] * rng.normal();
  return actions;
}

void gaussian_logprob_entropy(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                              const Eigen::MatrixXd& actions, Eigen::VectorXd& log_probs,
                              Eigen::VectorXd& entropies) {
  if (actions.rows() != means.rows() || actions.cols() != means.cols())
    throw UsageError("gaussian: actions shape must match means");
  const Eigen::ArrayXd inv_sigma = (-log_std.array()).exp();
  const double dim = static_cast<double>(means.cols());
  // Entropy per dim: 0.5*ln(2*pi*e) + log_std, state-independent.
  const double entropy = 0.5 * dim * (kLogTwoPi + 1.0) + log_std.sum();
  log_probs.resize(means.rows());
  entropies.setConstant(means.rows(), entropy);
  for (Eigen::Index i = 0; i < means.rows(); ++i) {
    const Eigen::ArrayXd z = (actions.row(i) - means.row(i)).transpose().array() * inv_sigma;
    log_probs[i] = -0.5 * z.square().sum() - log_std.sum() - 0.5 * dim * kLogTwoPi;
  }
}

void gaussian_backward(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                       const Eigen::MatrixXd& actions, const Eigen::VectorXd& d_log_probs,
                       const Eigen::VectorXd& d_entropies, Eigen::MatrixXd& d_means,
                       Eigen::VectorXd& d_log_std) {
  const Eigen::ArrayXd inv_var = (-2.0 * log_std.array()).exp();
  d_means.resize(means.rows(), means.cols());
  d_log_std = Eigen::VectorXd::Zero(log_std.size());
  for (Eigen::Index i = 0; i < means.rows(); ++i) {
    const Eigen::ArrayXd diff = (actions.row(i) - means.row(i)).transpose().array();
    // d logprob / d mean = (a - mu) / sigma^2
    d_means.row(i) = (d_log_probs[i] * diff * inv_var).matrix().transpose();
    // d logprob / d log_std = z^2 - 1; d entropy / d log_std = 1
    d_log_std.array() +=
        d_log_probs[i] * (diff.square() * inv_var - 1.0) + d_entropies[i];
  }
}

}  // namespace clipppo::nn
