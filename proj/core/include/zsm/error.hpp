#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zsm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract arguments.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedAmbient : public Error {
 public:
  using Error::Error;
};

// A construction exists only under hypotheses that the input does not meet.
class Inapplicable : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure surfaced to the caller.
class DataError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t nodes, std::uint64_t results)
      : Error(what), nodes_(nodes), results_(results) {}
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t results() const { return results_; }

 private:
  std::uint64_t nodes_;
  std::uint64_t results_;
};

}  // namespace zsm
