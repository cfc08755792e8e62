#pragma once

#include <stdexcept>
#include <string>

namespace ldk {

// Bad input: parameters, config files, preconditions. CLI exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed (no convergence, singular system). CLI exit status 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldk
