#pragma once

#include <stdexcept>
#include <string>

namespace uamlanes {

/// Sequence lengths disagree with the corridor horizon.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter block violates its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input file does not match its documented schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force enumeration refused: instance exceeds the configured bound.
class SizeBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The lane program has no feasible schedule (initial state breaks the lane budget).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uamlanes
