#pragma once

#include <stdexcept>
#include <string>

namespace sphcut {

/// Malformed arguments: out-of-range vertex, non-unit vector, angle outside its domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem exceeds a configured desk-scale limit (exact MaxCut size, partition dimension, cell count).
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No parameter on the search grid satisfies the requested condition.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Monte Carlo sample retained no pairs.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stored geometric data no longer witnesses the property it was built for.
class CorruptionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphcut
