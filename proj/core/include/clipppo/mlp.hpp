#ifndef CLIPPPO_MLP_HPP_
#define CLIPPPO_MLP_HPP_

#include <Eigen/Core>
#include <vector>

#include "clipppo/rng.hpp"

namespace clipppo::nn {

// One dense layer, weight stored out x in. Also reused as the gradient
// holder since it is just a pair of arrays of the same shapes.
struct DenseLayer {
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
};

using LayerGrads = std::vector<DenseLayer>;

// Per-layer values recorded by a forward pass so backward can run exact
// reverse-mode accumulation: inputs[i] feeds layer i, outputs[i] is its
// post-activation output.
struct MlpCache {
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> outputs;
};

// Dense network with tanh hidden activations and an identity output layer.
// All math is 64-bit. Batches are row-major: B x in -> B x out.
class Mlp {
 public:
  Mlp() = default;
  // sizes = {in, h1, ..., out}; parameters start at zero.
  explicit Mlp(const std::vector<int>& sizes);

  int input_size() const;
  int output_size() const;
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, MlpCache& cache) const;

  // Accumulates dLoss/dparams into `grads` (shape-congruent, pre-zeroed by
  // the caller or reused across minibatches) given dLoss/doutput.
  void backward(const MlpCache& cache, const Eigen::MatrixXd& d_output, LayerGrads& grads) const;

  std::size_t param_count() const;
  LayerGrads zero_grads() const;

 private:
  std::vector<DenseLayer> layers_;
};

// Orthogonal initialization (QR of a Gaussian matrix, sign-fixed by the
// diagonal of R) scaled by `gain`; biases zero.
void orthogonal_init(DenseLayer& layer, double gain, Rng& rng);

}  // namespace clipppo::nn

#endif  // CLIPPPO_MLP_HPP_
