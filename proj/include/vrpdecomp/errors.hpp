#pragma once

#include <stdexcept>
#include <string>

namespace vrpdecomp {

/// Malformed instance text. The message names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The LP engine could not make progress; never accompanied by a result.
class NumericalFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Explicit DAG exceeded its arc budget.
class CompileOverflow : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A route cannot be replayed in the current relaxation.
class LiftFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class ContractError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace vrpdecomp
