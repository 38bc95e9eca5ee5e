#pragma once

#include <stdexcept>
#include <string>

namespace gstarx {

struct EmptyCoalitionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MemberOverlapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyDatasetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IncompleteTableError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExactCapExceededError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NodeOutOfRangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct AllZeroScoresError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Iteration budget exhausted before the requested tolerance was reached.
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input files or option values.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace gstarx
