#ifndef CLIPPPO_DISTRIBUTIONS_HPP_
#define CLIPPPO_DISTRIBUTIONS_HPP_

#include <Eigen/Core>
#include <vector>

#include "clipppo/rng.hpp"

namespace clipppo::nn {

// --- categorical over logits (one row per sample) ---

// Numerically stable shifted log-softmax.
Eigen::MatrixXd log_softmax_rows(const Eigen::MatrixXd& logits);

int sample_categorical(const Eigen::RowVectorXd& logits, Rng& rng);

// log pi(a | logits) and exact Shannon entropy per sample.
void categorical_logprob_entropy(const Eigen::MatrixXd& logits, const std::vector<int>& actions,
                                 Eigen::VectorXd& log_probs, Eigen::VectorXd& entropies);

// dLoss/dlogits given per-sample coefficients dLoss/dlogprob and
// dLoss/dentropy.
Eigen::MatrixXd categorical_backward(const Eigen::MatrixXd& logits, const std::vector<int>& actions,
                                     const Eigen::VectorXd& d_log_probs,
                                     const Eigen::VectorXd& d_entropies);

// --- diagonal Gaussian with state-independent log-std ---

Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std, Rng& rng);

// Log-prob summed over action dims; exact differential entropy.
void gaussian_logprob_entropy(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                              const Eigen::MatrixXd& actions, Eigen::VectorXd& log_probs,
                              Eigen::VectorXd& entropies);

void gaussian_backward(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                       const Eigen::MatrixXd& actions, const Eigen::VectorXd& d_log_probs,
                       const Eigen::VectorXd& d_entropies, Eigen::MatrixXd& d_means,
                       Eigen::VectorXd& d_log_std);

}  // namespace clipppo::nn

#endif  // CLIPPPO_DISTRIBUTIONS_HPP_
