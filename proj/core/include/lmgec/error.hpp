#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmgec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Overlapping, unsorted or out-of-range edit spans.
class SpanConflictError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

/// The scorer answered, but with an error for this request.
class ScorerError : public Error {
 public:
  using Error::Error;
};

/// The scorer backend is gone (spawn failure, EOF, timeout).
class ScorerUnavailable : public Error {
 public:
  using Error::Error;
};

/// Batch scoring failed; index() is the offending element.
class BatchError : public ScorerError {
 public:
  BatchError(std::size_t index, const std::string& what)
      : ScorerError("batch element " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace lmgec
