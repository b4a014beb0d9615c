#pragma once
// Error types shared across the library. The CLI maps each class to a
// distinct exit code (parse=2, validation=3, disconnected=4, budget=5).

#include <stdexcept>
#include <string>

namespace gridnav {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (map grammar, scenario files, trace files).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Well-formed input that violates an invariant (key point on a wall,
// bearing spacing, control reachability rule, schedule bounds).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A key point (or the return leg) is unreachable; the tour is impossible.
class DisconnectedKeyPointError : public Error {
 public:
  using Error::Error;
};

// Mission exceeded its tick budget.
class TickBudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridnav
