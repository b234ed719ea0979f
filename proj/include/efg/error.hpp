#ifndef EFG_ERROR_HPP_
#define EFG_ERROR_HPP_

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace efg {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad permutation, degree mismatch, element outside a group.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Syntax error in textual input. `line` is 0 when the text was a single line.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InvalidArgument((line ? "line " + std::to_string(line) + ", " : std::string()) + "column " +
                        std::to_string(column) + ": " + what),
        reason_(what),
        line_(line),
        column_(column) {}

  const std::string& reason() const { return reason_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string reason_;
  std::size_t line_;
  std::size_t column_;
};

/// A configured size or time limit was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A theorem checker was called on a group outside the theorem's hypotheses.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A residual failed its own postcondition, i.e. the membership predicate is
/// not closed the way a formation must be.
class FormationViolation : public Error {
 public:
  using Error::Error;
};

struct Limits {
  std::size_t max_order = 2000;
  std::size_t lattice_budget = 400;
};

/// Cooperative wall-clock deadline. A default-constructed deadline never fires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : armed_(true),
        end_(Clock::now() +
             std::chrono::duration_cast<Clock::duration>(budget)) {}

  bool expired() const { return armed_ && Clock::now() > end_; }

  void check() const {
    if (expired()) throw BudgetExceeded("time budget exceeded");
  }

 private:
  bool armed_ = false;
  Clock::time_point end_{};
};

inline void check_deadline(const Deadline* d) {
  if (d != nullptr) d->check();
}

}  // namespace efg

#endif  // EFG_ERROR_HPP_
