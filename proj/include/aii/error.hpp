#pragma once

#include <stdexcept>
#include <string>

namespace aii {

// Base class for every data error raised by the library. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CSV/JSON structure (missing or extra columns, bad header).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A field parsed but holds an invalid value (negative citations, ...).
class ValueError : public Error {
 public:
  ValueError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("empty corpus: no data rows") {}
};

class EmptyGroupError : public Error {
 public:
  EmptyGroupError() : Error("empty group: no values to describe") {}
};

class DuplicateRecordError : public Error {
 public:
  using Error::Error;
};

class UndefinedScalingError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition (e.g. mismatched group).
class ContractError : public Error {
 public:
  using Error::Error;
};

class DegenerateLikelihoodError : public Error {
 public:
  using Error::Error;
};

class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace aii
