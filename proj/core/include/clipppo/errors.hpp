#ifndef CLIPPPO_ERRORS_HPP_
#define CLIPPPO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace clipppo {

// Misuse of an API (bad action index, stepping a finished episode,
// minibatch larger than the batch, ...). Thrown as std::invalid_argument
// so callers can distinguish it from runtime training failures.
using UsageError = std::invalid_argument;

// Numerical failure during training: non-finite observation, network
// output or loss. Carries enough context to locate the offending step
// or minibatch.
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clipppo

#endif  // CLIPPPO_ERRORS_HPP_
