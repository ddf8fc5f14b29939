#pragma once

#include <stdexcept>
#include <string>

namespace fcg {

/// Invalid argument to a library operation (bad index, depth mismatch,
/// malformed input text).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured resource cap (depth, element
/// count, pcgs length).
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fcg
