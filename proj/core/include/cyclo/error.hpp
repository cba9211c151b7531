#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

/// Malformed or unreadable input data (WAV, CYCF, score files).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated numeric precondition or degenerate input to an analysis operation.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyclo
