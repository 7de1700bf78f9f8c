#ifndef INTERSENSE_ERRORS_HPP_
#define INTERSENSE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace intersense {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Markov chain without a unique stationary distribution.
class DegenerateChain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No point of the search space satisfies the interference constraints.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The interference limit is never reached for any finite duration.
class Unbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario file or inconsistent scenario.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace intersense

#endif  // INTERSENSE_ERRORS_HPP_
