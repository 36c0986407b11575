#ifndef CLIPPPO_CHECKPOINT_HPP_
#define CLIPPPO_CHECKPOINT_HPP_

#include <string>

#include "clipppo/policy.hpp"

namespace clipppo::nn {

// Flat binary checkpoint of named parameter arrays. Layout (little-endian):
//   magic "CPPO"            4 bytes
//   version                 u32 (currently 1)
//   continuous flag         u8
//   action_dim              i32
//   array count             u32
//   per array: name length  u32
//              name         bytes
//              rank         u32
//              dims         i64 each
//              data         float64, column-major
// Round-trip load/save is bit-exact.
void save_checkpoint(const std::string& path, const PolicyParams& params);
PolicyParams load_checkpoint(const std::string& path);

}  // namespace clipppo::nn

#endif  // CLIPPPO_CHECKPOINT_HPP_
