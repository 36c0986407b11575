#ifndef CLIPPPO_POLICY_HPP_
#define CLIPPPO_POLICY_HPP_

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "clipppo/env.hpp"
#include "clipppo/mlp.hpp"
#include "clipppo/rng.hpp"

namespace clipppo::nn {

// Separate policy and value networks plus, for continuous actions, a
// learned state-independent log-std vector.
struct PolicyParams {
  Mlp policy_net;            // obs -> n_actions logits, or -> action_dim means
  Mlp value_net;             // obs -> 1
  Eigen::VectorXd log_std;   // size 0 for discrete policies
  bool continuous = false;
  int action_dim = 0;        // n_actions (discrete) or action_dim (continuous)
};

// dLoss/dtheta, shape-congruent with its PolicyParams.
struct Grads {
  LayerGrads policy;
  LayerGrads value;
  Eigen::VectorXd log_std;
};

// Two hidden layers of 64 tanh units for both nets; orthogonal init with
// gain sqrt(2) on hidden layers, 0.01 on the policy head and 1.0 on the
// value head; log_std starts at zero.
PolicyParams make_policy(const envs::EnvSpec& spec, std::uint64_t init_seed,
                         const std::vector<int>& hidden = {64, 64});

Grads zero_grads(const PolicyParams& params);
void scale_grads(Grads& grads, double factor);
double grad_global_norm(const Grads& grads);

std::size_t param_count(const PolicyParams& params);

// Visit every parameter array in a fixed canonical order (policy layers,
// value layers, log_std). `dims` is {rows, cols} for matrices and {n} for
// vectors.
using ArrayVisitor =
    std::function<void(const std::string& name, double* data, const std::vector<Eigen::Index>& dims)>;
using ConstArrayVisitor = std::function<void(const std::string& name, const double* data,
                                             const std::vector<Eigen::Index>& dims)>;

void visit_arrays(PolicyParams& params, const ArrayVisitor& fn);
void visit_arrays(const PolicyParams& params, const ConstArrayVisitor& fn);
void visit_arrays(Grads& grads, const ArrayVisitor& fn);
void visit_arrays(const Grads& grads, const ConstArrayVisitor& fn);

// Sampled actions plus their log-probs and values, for rollout collection.
struct ActOut {
  std::vector<int> actions_d;       // discrete
  Eigen::MatrixXd actions_c;        // continuous, B x action_dim
  Eigen::VectorXd log_probs;
  Eigen::VectorXd values;
};

// Actions are sampled (not argmax) from the policy distribution.
ActOut act(const PolicyParams& params, const Eigen::MatrixXd& obs, Rng& rng);

// Log-probs and entropies of given actions under the current parameters.
void logprob_entropy(const PolicyParams& params, const Eigen::MatrixXd& policy_out,
                     const std::vector<int>& actions_d, const Eigen::MatrixXd& actions_c,
                     Eigen::VectorXd& log_probs, Eigen::VectorXd& entropies);

}  // namespace clipppo::nn

#endif  // CLIPPPO_POLICY_HPP_
