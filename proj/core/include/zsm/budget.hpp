#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "zsm/error.hpp"

namespace zsm {

struct Budget {
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_results = 100'000;

  static Budget unlimited() {
    return {std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max()};
  }
  void validate() const {
    if (max_nodes == 0 || max_results == 0) throw InvalidInput("budget limits must be positive");
  }
};

// Counts search work against a Budget.
class Meter {
 public:
  explicit Meter(const Budget& b) : budget_(b) { b.validate(); }

  bool node() { return ++nodes_ <= budget_.max_nodes; }
  bool result() { return ++results_ <= budget_.max_results; }
  bool exhausted() const { return nodes_ > budget_.max_nodes || results_ > budget_.max_results; }

  void node_or_throw(const char* where) {
    if (!node()) throw BudgetExceeded(std::string(where) + ": node budget exhausted", nodes_, results_);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t results() const { return results_; }
  const Budget& budget() const { return budget_; }

 private:
  Budget budget_;
  std::uint64_t nodes_ = 0;
  std::uint64_t results_ = 0;
};

}  // namespace zsm
