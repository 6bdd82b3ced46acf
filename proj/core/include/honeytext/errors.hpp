#pragma once

#include <stdexcept>
#include <string>

namespace honeytext {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// A key (word, category, synset id) was not found.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an argument contract.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Not enough or inconsistent training data.
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Structural problem in a loaded graph (cycles, dangling edges).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// External decoy generator failed.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

/// An exact computation would exceed its enumeration budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Index or seed outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace honeytext
