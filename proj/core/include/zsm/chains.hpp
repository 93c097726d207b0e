#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsm/invariants.hpp"

namespace zsm {

// Pair of sequences over the negatives; in E when the sums agree, in S when left == right.
struct PairSequence {
  Sequence left;
  Sequence right;

  bool symmetric() const { return left == right; }
  std::string to_string() const;
  friend bool operator==(const PairSequence&, const PairSequence&) = default;
  friend std::strong_ordering operator<=>(const PairSequence& a, const PairSequence& b);
};

// Atoms of E over the given negatives, canonically sorted.
std::vector<PairSequence> e_atoms(const std::vector<Int>& negatives, const Budget& budget = Budget());

// left minus right as exponent vectors aligned with the sorted negatives.
std::vector<Count> difference_vector(const PairSequence& p, const std::vector<Int>& negatives);

Count relative_davenport(const std::vector<Int>& negatives, const Budget& budget = Budget());

// Positive parts of the atoms of z, sorted.
std::vector<Sequence> positive_pattern(const Factorization& z);
// z+ <= y+ in the refinement order.
bool refines_to(const Factorization& z, const Factorization& y);

FactorizationSet upsilon(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());

Chain chain_to_upsilon(const Sequence& b, const Factorization& z, const AtomSet& atoms,
                       const Budget& budget = Budget());
Chain equal_plus_chain(const Sequence& b, const Factorization& z, const Factorization& y, const AtomSet& atoms,
                       const Budget& budget = Budget());

struct CaseAWitness {
  std::vector<Int> subset;  // A inside supp(B^-)
  Factorization z;
};

struct M2Result {
  std::optional<Chain> chain;
  std::optional<CaseAWitness> witness;
};

M2Result m2_chain(const Sequence& b, const Factorization& z, const AtomSet& atoms, const Budget& budget = Budget());

struct BreakapartReport {
  Count m = 0;
  Sequence heavy;      // R: negatives of multiplicity >= m-1
  Sequence extended;   // R'
  Int modulus = 0;     // n with <supp(R')> = nZ
  bool residues_avoided = false;
};

// m defaults to |min supp(u)| when zero.
BreakapartReport breakapart_analysis(const Sequence& u, Int l, Count m = 0);

}  // namespace zsm
