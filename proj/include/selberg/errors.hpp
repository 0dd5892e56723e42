#pragma once

#include <stdexcept>
#include <string>

namespace selberg {

// Input outside an operation's documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (vertex count, matrix dimension, series order) was hit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated series was asked for a coefficient beyond its order.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Two certificates that must share a signed set do not.
class MismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A construction produced something that violates its own invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace selberg
