#pragma once

#include <vector>

#include "zsm/budget.hpp"
#include "zsm/groundset.hpp"

namespace zsm {

// Catalogue of all atoms over a finite ground set, canonically sorted.
struct AtomSet {
  Ambient ambient;
  std::vector<Int> ground;
  std::vector<Sequence> atoms;

  Count davenport() const;
  bool contains(const Sequence& u) const;
};

bool is_atom(const Sequence& u);

// All atoms over a finite condensed G0 within Z.
AtomSet enumerate_atoms(const std::vector<Int>& ground, const Budget& budget = Budget());
// All atoms over a subset of Z/nZ.
AtomSet enumerate_atoms_cyclic(Int modulus, const std::vector<Int>& residues, const Budget& budget = Budget());

Count davenport(const std::vector<Int>& ground, const Budget& budget = Budget());
Count davenport_cyclic(Int modulus, const std::vector<Int>& residues, const Budget& budget = Budget());

// The atom with support {a, b}.
Sequence two_support_atom(Int a, Int b);

// An atom over the spec divisible by s, where supp(s) lies in the negative part.
Sequence extend_to_atom(const Sequence& s, const GroundSpec& spec);

}  // namespace zsm
