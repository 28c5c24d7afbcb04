#pragma once

#include <stdexcept>
#include <string>

namespace smp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: distributions, ids, parameters out of range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration would exceed its configured cap; callers should fall back to Monte Carlo.
class ExactInfeasibleError : public Error {
 public:
  explicit ExactInfeasibleError(const std::string& what)
      : Error("exact mode infeasible: " + what + "; use Monte Carlo mode") {}
};

// An exhaustive search (rank, sequence enumeration, witness search) exceeded its cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace smp
