#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drr {

/// Byte offsets into a source text, half-open.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors that point at a location in the program text.
class LocatedError : public Error {
 public:
  LocatedError(const std::string& what, Span span)
      : Error(what + " at byte " + std::to_string(span.begin)), span_(span) {}
  Span span() const { return span_; }

 private:
  Span span_;
};

class LexError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

class ParseError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

/// A requested tree edit does not fit the grammar.
/// The input parses but does not typecheck.
class CompileError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

/// Contradictory run options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EditError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class UpdateError : public Error {
 public:
  using Error::Error;
};

class DefaultError : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

class ApplyError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

class InitialPropertyError : public Error {
 public:
  using Error::Error;
};

}  // namespace drr
