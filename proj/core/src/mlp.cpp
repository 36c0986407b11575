#include "clipppo/mlp.hpp"

#include <Eigen/QR>

#include "clipppo/errors.hpp"

namespace clipppo::nn {

Mlp::Mlp(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw UsageError("mlp: need at least input and output sizes");
  layers_.reserve(sizes.size() - 1);
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    DenseLayer layer;
    layer.w = Eigen::MatrixXd::Zero(sizes[i + 1], sizes[i]);
    layer.b = Eigen::VectorXd::Zero(sizes[i + 1]);
    layers_.push_back(std::move(layer));
  }
}

int Mlp::input_size() const { return static_cast<int>(layers_.front().w.cols()); }
int Mlp::output_size() const { return static_cast<int>(layers_.back().w.rows()); }

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  if (x.cols() != input_size())
    throw UsageError("mlp: input has " + std::to_string(x.cols()) + " columns, expected " +
                     std::to_string(input_size()));
  Eigen::MatrixXd h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = (h * layers_[i].w.transpose()).rowwise() + layers_[i].b.transpose();
    if (i + 1 < layers_.size())
      h = z.array().tanh();
    else
      h = std::move(z);
  }
  return h;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, MlpCache& cache) const {
  if (x.cols() != input_size())
    throw UsageError("mlp: input has " + std::to_string(x.cols()) + " columns, expected " +
                     std::to_string(input_size()));
  cache.inputs.assign(layers_.size(), {});
  cache.outputs.assign(layers_.size(), {});
  Eigen::MatrixXd h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    cache.inputs[i] = h;
    Eigen::MatrixXd z = (h * layers_[i].w.transpose()).rowwise() + layers_[i].b.transpose();
    if (i + 1 < layers_.size())
      h = z.array().tanh();
    else
      h = std::move(z);
    cache.outputs[i] = h;
  }
  return h;
}

void Mlp::backward(const MlpCache& cache, const Eigen::MatrixXd& d_output, LayerGrads& grads) const {
  if (grads.size() != layers_.size()) throw UsageError("mlp: gradient holder has wrong layer count");
  Eigen::MatrixXd dz = d_output;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    // Output layer is affine; hidden layers apply tanh whose derivative is
    // 1 - tanh^2 evaluated from the cached activation.
    if (k + 1 < layers_.size()) {
      dz = dz.array() * (1.0 - cache.outputs[k].array().square());
    }
    grads[k].w.noalias() += dz.transpose() * cache.inputs[k];
    grads[k].b.noalias() += dz.colwise().sum().transpose();
    if (k > 0) dz = (dz * layers_[k].w).eval();
  }
}

std::size_t Mlp::param_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += static_cast<std::size_t>(layer.w.size() + layer.b.size());
  return n;
}

LayerGrads Mlp::zero_grads() const {
  LayerGrads grads;
  grads.reserve(layers_.size());
  for (const auto& layer : layers_) {
    grads.push_back({Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()),
                     Eigen::VectorXd::Zero(layer.b.size())});
  }
  return grads;
}

void orthogonal_init(DenseLayer& layer, double gain, Rng& rng) {
  const auto rows = layer.w.rows();
  const auto cols = layer.w.cols();
  const auto big = std::max(rows, cols);
  const auto small = std::min(rows, cols);

  Eigen::MatrixXd gaussian(big, small);
  for (Eigen::Index i = 0; i < big; ++i)
    for (Eigen::Index j = 0; j < small; ++j) gaussian(i, j) = rng.normal();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(big, small);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(small).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < small; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);

  layer.w = gain * (rows < cols ? q.transpose() : q);
  layer.b.setZero();
}

}  // namespace clipppo::nn
