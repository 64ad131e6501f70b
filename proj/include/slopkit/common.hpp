#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slopkit {

/// Dense real vector used for probabilities, rewards, scores, and weights.
using Vec = std::vector<double>;

/// Seed for the deterministic RNG streams. Determinism is promised per seed
/// within one build, not bit-compatibility across standard libraries.
using RngSeed = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong sizes, non-finite entries, empty inputs.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined request (support violation, 0^alpha with
/// alpha <= 0, non-positive scale, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs that must agree with each other do not (e.g. the reference
/// expert's score row vs. the reference distribution).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed its enumeration budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Weight ascent left the numerically trustworthy region.
class DivergenceError : public Error {
 public:
  DivergenceError(int step, const std::string& what) : Error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// File-format error with a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

bool all_finite(const Vec& values) noexcept;

/// Worker count for parallel sections: min(jobs, hardware threads), capped by
/// the SLOPKIT_THREADS environment variable when set.
std::size_t worker_count(std::size_t jobs);

}  // namespace slopkit
