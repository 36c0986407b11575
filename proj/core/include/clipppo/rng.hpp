#ifndef CLIPPPO_RNG_HPP_
#define CLIPPPO_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace clipppo {

// Seed derivation is splitmix-style: a master seed plus a textual label and
// an index are folded through splitmix64 so that every consumer (env slots,
// network init, action sampling, minibatch shuffles) gets an independent
// stream from a single knob. Changing the number of consumers never
// perturbs the streams of the others.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0);

// xoshiro256++ stream generator, seeded via splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // [0, 1) with 53 random bits.
  double uniform();
  // [lo, hi)
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller; the spare value is cached.
  double normal();
  // Unbiased integer in [0, n), n >= 1, by rejection.
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace clipppo

#endif  // CLIPPPO_RNG_HPP_
