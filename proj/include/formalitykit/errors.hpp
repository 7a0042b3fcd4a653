#pragma once

#include <stdexcept>
#include <string>

namespace fkit {

// Malformed or mathematically invalid input. The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configurable resource cap was hit (word counts, truncation). Exit code 3.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The data within the truncation does not decide the question asked.
class inconclusive_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fkit
