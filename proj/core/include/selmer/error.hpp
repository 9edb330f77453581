#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace selmer {

// Base for every error the library raises. Callers that only care about
// success/failure can catch this; the CLI maps the subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request exceeds a configured resource limit (sieve bound, table size).
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::uint64_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
};

// A prime lies beyond the Euler-factor data an instance carries.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& what, std::uint64_t max_x)
      : Error(what + " (max usable x = " + std::to_string(max_x) + ")"),
        max_x_(max_x) {}
  std::uint64_t max_usable_x() const noexcept { return max_x_; }

 private:
  std::uint64_t max_x_;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad discriminant, bad argument domain, bad config.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Coefficient-file problems carry the offending line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DeligneBoundError : public Error {
 public:
  DeligneBoundError(std::uint64_t p, double lambda)
      : Error("Deligne bound |lambda(p)| <= 2 violated at p = " +
              std::to_string(p) + " (lambda = " + std::to_string(lambda) + ")"),
        prime_(p) {}
  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

class GapError : public Error {
 public:
  GapError(std::uint64_t missing, std::uint64_t coverage)
      : Error("prime " + std::to_string(missing) +
              " missing below declared coverage " + std::to_string(coverage)),
        missing_(missing) {}
  std::uint64_t missing_prime() const noexcept { return missing_; }

 private:
  std::uint64_t missing_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

// Numerical target not reached; `estimate` is the best value obtained and
// `bound` the error bound that could be certified.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double bound)
      : Error(what), estimate_(estimate), bound_(bound) {}
  double estimate() const noexcept { return estimate_; }
  double bound() const noexcept { return bound_; }

 private:
  double estimate_;
  double bound_;
};

}  // namespace selmer
