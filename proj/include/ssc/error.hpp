#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

// Invalid parameters (bits per token, entry length, threshold, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The dictionary has no free token IDs left.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A byte string violates a length bound.
class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Index or token ID out of range.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed or inconsistent serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssc
