#pragma once

#include <string>
#include <vector>

#include "zsm/factorize.hpp"

namespace zsm {

// Drops the (-n) terms and reduces the rest modulo n.
Sequence transfer_to_cyclic(const Sequence& b, Int n);

// Subgroup of Z/nZ generated by the positive residues: generator gcd(n, residues).
struct CyclicClassGroup {
  Int modulus = 0;
  Int generator = 0;
  Int order = 0;
  bool full = false;
};
CyclicClassGroup cyclic_class_group(const std::vector<Int>& positives, Int n);

// Replaces every term kd (k >= 1) by d^k.
Sequence psi_collapse(const Sequence& b, Int d);
// sigma(F)/d - |F| for the multiples-of-d part F of b.
Count psi_shift(const Sequence& b, Int d);
Factorization psi_bar(const Factorization& z, Int d);

struct FidelityReport {
  Sequence source;
  Sequence target;
  LengthSet source_lengths;
  LengthSet target_lengths;
  Count shift = 0;  // target lengths = source lengths + shift
  bool lengths_ok = true;
  bool distances_ok = true;
  bool image_ok = true;  // factorization map is onto Z(target), when a map is given
  std::vector<std::string> mismatches;

  bool passed() const { return lengths_ok && distances_ok && image_ok; }
};

enum class DistanceCheck { equal, at_most };

// Compares L and d(Z_k, Z_l) of source and target; distances over adjacent lengths for at_most.
FidelityReport verify_transfer_fidelity(const Sequence& source, const Sequence& target, const AtomSet& source_atoms,
                                        const AtomSet& target_atoms, Count shift, DistanceCheck mode,
                                        const Budget& budget = Budget());

FidelityReport verify_cyclic_fidelity(const Sequence& b, Int n, const Budget& budget = Budget());
FidelityReport verify_psi_fidelity(const Sequence& b, Int d, const Budget& budget = Budget());

}  // namespace zsm
