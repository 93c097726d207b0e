#pragma once

#include <string>
#include <vector>

#include "zsm/budget.hpp"
#include "zsm/groundset.hpp"

namespace zsm {

using Vector = std::vector<Count>;
using Matrix = std::vector<std::vector<Int>>;  // row-major, all rows the same width

struct HilbertOptions {
  // Completion gives up past this coordinate sum and falls back to a bounded search.
  Count degree_cap = 0;  // 0 means no cap
};

struct HilbertBasis {
  std::vector<Vector> basis;  // sorted
  bool complete = true;       // false when the degree cap forced the bounded fallback
  Count degree_used = 0;      // largest coordinate sum examined
  std::string method;         // "completion" or "bounded"
};

// Minimal nonzero x in N^n with A x = 0.
HilbertBasis kernel_hilbert_basis(const Matrix& a, const Budget& budget = Budget(), HilbertOptions opt = {});

// Minimal nonzero solutions of A x = 0 with coordinate sum <= max_degree, by exhaustive search.
std::vector<Vector> bounded_minimal_solutions(const Matrix& a, Count max_degree, const Budget& budget = Budget());

struct PairAtom {
  Vector left;
  Vector right;
  Count left_size() const;
  Count right_size() const;
  friend bool operator==(const PairAtom&, const PairAtom&) = default;
  friend auto operator<=>(const PairAtom&, const PairAtom&) = default;
};

// Minimal nonzero (x, y) with M x = M y; columns of m are generator exponent vectors.
struct PairBasis {
  std::vector<PairAtom> atoms;
  bool complete = true;
  std::string method;
};
PairBasis hilbert_basis(const Matrix& m, const Budget& budget = Budget(), HilbertOptions opt = {});

Vector multiply(const Matrix& a, const Vector& x);
bool dominated(const Vector& small, const Vector& big);

}  // namespace zsm
