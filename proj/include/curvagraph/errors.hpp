#pragma once

#include <stdexcept>
#include <string>

namespace curvagraph {

// Malformed input text, unknown ids, bad generator parameters.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input is well formed but an operation's requirements are not met
// (ball not faithful, curvature sign assumption broken, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvagraph
