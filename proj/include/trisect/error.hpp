#pragma once

#include <stdexcept>
#include <string>

namespace trisect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pass refers to a handle pair outside the model, or a word is empty.
class MalformedCurve : public Error {
 public:
  using Error::Error;
};

class SlideRejected : public Error {
 public:
  using Error::Error;
};

// Loop markers out of range or not in the cyclic order of an admissible loop.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class RequiresStandardization : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace trisect
