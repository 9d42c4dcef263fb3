#pragma once

#include <stdexcept>
#include <string>

namespace gbp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad indices, self-loops, a = b in a crowning, ...
class InputError : public Error {
public:
  using Error::Error;
};

// Internal consistency violated (stored cost differs from recomputed, ...).
class IntegrityError : public Error {
public:
  using Error::Error;
};

class GeometryError : public Error {
public:
  using Error::Error;
};

class EmbeddingError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class MatchingError : public Error {
public:
  using Error::Error;
};

// Refusal of an exhaustive routine whose input exceeds its size guard.
class GuardError : public Error {
public:
  using Error::Error;
};

class GenerationError : public Error {
public:
  using Error::Error;
};

class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

} // namespace gbp
