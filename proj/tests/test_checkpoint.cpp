#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "clipppo/checkpoint.hpp"
#include "clipppo/errors.hpp"
#include "clipppo/policy.hpp"

using namespace clipppo::nn;
using clipppo::envs::ActionKind;
using clipppo::envs::EnvSpec;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void check_bit_exact(const PolicyParams& a, const PolicyParams& b) {
  REQUIRE(param_count(a) == param_count(b));
  std::vector<std::pair<const double*, Eigen::Index>> arrays_b;
  visit_arrays(b, [&](const std::string&, const double* data, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    arrays_b.emplace_back(data, n);
  });
  std::size_t which = 0;
  visit_arrays(a, [&](const std::string&, const double* data, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    REQUIRE(arrays_b[which].second == n);
    CHECK(std::memcmp(data, arrays_b[which].first, sizeof(double) * static_cast<std::size_t>(n)) == 0);
    ++which;
  });
}

}  // namespace

TEST_CASE("discrete policy checkpoints round-trip bit-exact") {
  EnvSpec spec;
  spec.obs_dim = 4;
  spec.action.kind = ActionKind::discrete;
  spec.action.n = 2;
  const PolicyParams params = make_policy(spec, 99);

  const std::string path = temp_path("clipppo_ckpt_d.bin");
  save_checkpoint(path, params);
  const PolicyParams loaded = load_checkpoint(path);
  CHECK(loaded.continuous == false);
  CHECK(loaded.action_dim == 2);
  check_bit_exact(params, loaded);
  std::filesystem::remove(path);
}

TEST_CASE("continuous policy checkpoints round-trip bit-exact") {
  EnvSpec spec;
  spec.obs_dim = 3;
  spec.action.kind = ActionKind::continuous;
  spec.action.dim = 2;
  spec.action.low = Eigen::VectorXd::Constant(2, -2.0);
  spec.action.high = Eigen::VectorXd::Constant(2, 2.0);
  PolicyParams params = make_policy(spec, 7);
  params.log_std << -0.123456789123456789, 0.42;

  const std::string path = temp_path("clipppo_ckpt_c.bin");
  save_checkpoint(path, params);
  const PolicyParams loaded = load_checkpoint(path);
  CHECK(loaded.continuous == true);
  check_bit_exact(params, loaded);
  std::filesystem::remove(path);
}

TEST_CASE("loading garbage fails cleanly") {
  const std::string path = temp_path("clipppo_ckpt_bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "not a checkpoint";
  }
  CHECK_THROWS_AS(load_checkpoint(path), clipppo::UsageError);
  CHECK_THROWS_AS(load_checkpoint(temp_path("clipppo_missing.bin")), clipppo::UsageError);
  std::filesystem::remove(path);
}
