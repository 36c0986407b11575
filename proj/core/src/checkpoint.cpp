#include "clipppo/checkpoint.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

#include "clipppo/errors.hpp"

namespace clipppo::nn {

namespace {

constexpr char kMagic[4] = {'C', 'P', 'P', 'O'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw UsageError("checkpoint: truncated file");
  return value;
}

struct NamedArray {
  std::string name;
  std::vector<Eigen::Index> dims;
  std::vector<double> data;
};

}  // namespace

void save_checkpoint(const std::string& path, const PolicyParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("checkpoint: cannot open '" + path + "' for writing");

  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod<std::uint8_t>(out, params.continuous ? 1 : 0);
  write_pod<std::int32_t>(out, params.action_dim);

  std::uint32_t count = 0;
  visit_arrays(params, [&](const std::string&, const double*, const std::vector<Eigen::Index>&) { ++count; });
  write_pod(out, count);

  visit_arrays(params, [&](const std::string& name, const double* data, const std::vector<Eigen::Index>& dims) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(dims.size()));
    Eigen::Index n = 1;
    for (auto d : dims) {
      write_pod<std::int64_t>(out, static_cast<std::int64_t>(d));
      n *= d;
    }
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
  });
  if (!out) throw UsageError("checkpoint: write to '" + path + "' failed");
}

PolicyParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("checkpoint: cannot open '" + path + "'");

  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4))
    throw UsageError("checkpoint: bad magic in '" + path + "'");
  if (read_pod<std::uint32_t>(in) != kVersion) throw UsageError("checkpoint: unsupported version");

  PolicyParams params;
  params.continuous = read_pod<std::uint8_t>(in) != 0;
  params.action_dim = read_pod<std::int32_t>(in);

  const auto count = read_pod<std::uint32_t>(in);
  std::vector<NamedArray> arrays(count);
  for (auto& arr : arrays) {
    const auto name_len = read_pod<std::uint32_t>(in);
    arr.name.resize(name_len);
    in.read(arr.name.data(), name_len);
    const auto rank = read_pod<std::uint32_t>(in);
    Eigen::Index n = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      arr.dims.push_back(static_cast<Eigen::Index>(read_pod<std::int64_t>(in)));
      n *= arr.dims.back();
    }
    arr.data.resize(static_cast<std::size_t>(n));
    in.read(reinterpret_cast<char*>(arr.data.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw UsageError("checkpoint: truncated file");
  }

  // Rebuild the two nets from the named weight shapes (w arrays are out x in
  // and appear in layer order).
  auto rebuild = [&](const std::string& prefix) {
    std::vector<int> sizes;
    for (const auto& arr : arrays) {
      if (arr.name.rfind(prefix + ".l", 0) == 0 && arr.name.size() > 2 &&
          arr.name.substr(arr.name.size() - 2) == ".w") {
        if (sizes.empty()) sizes.push_back(static_cast<int>(arr.dims[1]));
        sizes.push_back(static_cast<int>(arr.dims[0]));
      }
    }
    return Mlp(sizes);
  };
  params.policy_net = rebuild("policy");
  params.value_net = rebuild("value");
  if (params.continuous) params.log_std = Eigen::VectorXd::Zero(params.action_dim);

  std::size_t which = 0;
  visit_arrays(params, [&](const std::string& name, double* data, const std::vector<Eigen::Index>& dims) {
    if (which >= arrays.size()) throw UsageError("checkpoint: missing array " + name);
    const auto& arr = arrays[which++];
    if (arr.name != name || arr.dims != dims)
      throw UsageError("checkpoint: array mismatch at " + name);
    std::copy(arr.data.begin(), arr.data.end(), data);
  });
  if (which != arrays.size()) throw UsageError("checkpoint: unexpected extra arrays");
  return params;
}

}  // namespace clipppo::nn
