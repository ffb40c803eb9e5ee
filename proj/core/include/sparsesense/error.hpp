#pragma once

#include <stdexcept>
#include <string>

namespace sparsesense {

// Input-side failures (bad files, bad shapes, bad configs) derive from
// InputError; broken internal invariants derive from InvariantError. The CLI
// maps the two families onto distinct exit codes.

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class IndexError : public InputError {
 public:
  using InputError::InputError;
};

class EmptySegmentError : public InputError {
 public:
  EmptySegmentError() : InputError("segment has no readings") {}
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyInputError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class StratificationError : public InputError {
 public:
  using InputError::InputError;
};

class TrainingDataError : public InputError {
 public:
  using InputError::InputError;
};

class LoadError : public InputError {
 public:
  using InputError::InputError;
};

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sparsesense
