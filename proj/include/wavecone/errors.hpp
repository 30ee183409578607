#pragma once

#include <stdexcept>
#include <string>

namespace wavecone {

/// Shapes, variable counts or degrees of the operands do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematically meaningful range (xi = 0, s too large, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller promised a property (constant rank, exactness) that does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A mandatory self-check failed. Never recoverable.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Refusal to start a computation whose size exceeds a configured cap.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wavecone
