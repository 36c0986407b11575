#include <doctest.h>

#include <cmath>

#include "clipppo/distributions.hpp"
#include "clipppo/rng.hpp"

using namespace clipppo::nn;
using clipppo::Rng;

TEST_CASE("uniform two-action logits give log 0.5") {
  Eigen::MatrixXd logits = Eigen::MatrixXd::Zero(1, 2);
  Eigen::VectorXd lp, ent;
  categorical_logprob_entropy(logits, {0}, lp, ent);
  CHECK(lp[0] == doctest::Approx(-0.6931471805599453).epsilon(1e-14));
  CHECK(ent[0] == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("categorical probabilities sum to one even for huge logits") {
  Rng rng(3);
  for (double scale : {1.0, 100.0, 1e4}) {
    Eigen::MatrixXd logits(2, 5);
    for (Eigen::Index i = 0; i < logits.size(); ++i) logits.data()[i] = scale * rng.normal();
    const Eigen::MatrixXd log_p = log_softmax_rows(logits);
    for (int r = 0; r < 2; ++r) {
      const double total = log_p.row(r).array().exp().sum();
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(log_p.row(r).allFinite());
    }
  }
}

TEST_CASE("categorical entropy is at most log(n), equal only when uniform") {
  Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(1, 4, 3.7);
  Eigen::MatrixXd skewed(1, 4);
  skewed << 0.0, 1.0, -2.0, 0.5;
  Eigen::VectorXd lp, ent_u, ent_s;
  categorical_logprob_entropy(uniform, {0}, lp, ent_u);
  categorical_logprob_entropy(skewed, {0}, lp, ent_s);
  CHECK(ent_u[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(ent_s[0] < std::log(4.0));
}

TEST_CASE("categorical sampling tracks the softmax frequencies") {
  Eigen::RowVectorXd logits(3);
  logits << 0.0, std::log(2.0), std::log(4.0);  // probs 1/7, 2/7, 4/7
  Rng rng(11);
  int counts[3] = {0, 0, 0};
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[sample_categorical(logits, rng)];
  CHECK(std::abs(counts[0] / double(n) - 1.0 / 7.0) < 0.01);
  CHECK(std::abs(counts[1] / double(n) - 2.0 / 7.0) < 0.01);
  CHECK(std::abs(counts[2] / double(n) - 4.0 / 7.0) < 0.01);
}

TEST_CASE("standard normal log density at the mean") {
  const Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(1, 1);
  const Eigen::VectorXd log_std = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd lp, ent;
  gaussian_logprob_entropy(mean, log_std, Eigen::MatrixXd::Zero(1, 1), lp, ent);
  CHECK(lp[0] == doctest::Approx(-0.9189385332046727).epsilon(1e-14));
}

TEST_CASE("unit gaussian entropy is half log(2 pi e) per dimension") {
  const Eigen::MatrixXd mean = Eigen::MatrixXd::Constant(2, 3, 5.0);
  const Eigen::VectorXd log_std = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd lp, ent;
  gaussian_logprob_entropy(mean, log_std, mean, lp, ent);
  CHECK(ent[0] == doctest::Approx(3.0 * 1.4189385332046727).epsilon(1e-13));
  CHECK(ent[1] == ent[0]);
}

TEST_CASE("gaussian log-prob sums across dimensions") {
  Eigen::MatrixXd mean(1, 2);
  mean << 0.3, -0.7;
  Eigen::VectorXd log_std(2);
  log_std << 0.1, -0.4;
  Eigen::MatrixXd action(1, 2);
  action << 0.5, -0.2;
  Eigen::VectorXd lp, ent;
  gaussian_logprob_entropy(mean, log_std, action, lp, ent);

  double expected = 0.0;
  for (int d = 0; d < 2; ++d) {
    const double sigma = std::exp(log_std[d]);
    const double z = (action(0, d) - mean(0, d)) / sigma;
    expected += -0.5 * z * z - log_std[d] - 0.5 * std::log(2.0 * 3.14159265358979323846);
  }
  CHECK(lp[0] == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("categorical backward matches finite differences") {
  Rng rng(7);
  Eigen::MatrixXd logits(3, 4);
  for (Eigen::Index i = 0; i < logits.size(); ++i) logits.data()[i] = rng.normal();
  const std::vector<int> actions{1, 3, 0};
  Eigen::VectorXd d_lp(3), d_ent(3);
  d_lp << 0.7, -1.2, 0.4;
  d_ent << -0.3, 0.9, 1.1;

  const Eigen::MatrixXd analytic = categorical_backward(logits, actions, d_lp, d_ent);

  const double h = 1e-6;
  auto functional = [&](const Eigen::MatrixXd& l) {
    Eigen::VectorXd lp, ent;
    categorical_logprob_entropy(l, actions, lp, ent);
    return d_lp.dot(lp) + d_ent.dot(ent);
  };
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
      Eigen::MatrixXd up = logits, down = logits;
      up(i, j) += h;
      down(i, j) -= h;
      const double fd = (functional(up) - functional(down)) / (2.0 * h);
      CHECK(analytic(i, j) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("gaussian backward matches finite differences") {
  Rng rng(13);
  Eigen::MatrixXd means(2, 3);
  Eigen::MatrixXd actions(2, 3);
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    means.data()[i] = rng.normal();
    actions.data()[i] = rng.normal();
  }
  Eigen::VectorXd log_std(3);
  log_std << 0.2, -0.1, 0.05;
  Eigen::VectorXd d_lp(2), d_ent(2);
  d_lp << 1.3, -0.8;
  d_ent << 0.5, 0.25;

  Eigen::MatrixXd d_means;
  Eigen::VectorXd d_log_std;
  gaussian_backward(means, log_std, actions, d_lp, d_ent, d_means, d_log_std);

  const double h = 1e-6;
  auto functional = [&](const Eigen::MatrixXd& m, const Eigen::VectorXd& ls) {
    Eigen::VectorXd lp, ent;
    gaussian_logprob_entropy(m, ls, actions, lp, ent);
    return d_lp.dot(lp) + d_ent.dot(ent);
  };
  for (Eigen::Index i = 0; i < means.rows(); ++i) {
    for (Eigen::Index j = 0; j < means.cols(); ++j) {
      Eigen::MatrixXd up = means, down = means;
      up(i, j) += h;
      down(i, j) -= h;
      const double fd = (functional(up, log_std) - functional(down, log_std)) / (2.0 * h);
      CHECK(d_means(i, j) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
  for (Eigen::Index d = 0; d < log_std.size(); ++d) {
    Eigen::VectorXd up = log_std, down = log_std;
    up[d] += h;
    down[d] -= h;
    const double fd = (functional(means, up) - functional(means, down)) / (2.0 * h);
    CHECK(d_log_std[d] == doctest::Approx(fd).epsilon(1e-5));
  }
}
