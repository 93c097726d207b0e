#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsm/factorize.hpp"

namespace zsm {

// L = y + (initial ∪ core ∪ tail) inside y + period + dZ.
struct AampWitness {
  Count y = 0;
  Count d = 1;
  std::vector<Count> period;   // subset of [0, d] containing 0 and d
  std::vector<Count> core;     // starts at 0
  std::vector<Count> initial;  // inside [-bound, -1]
  std::vector<Count> tail;     // inside max core + [1, bound]
  Count bound = 0;
};

std::optional<AampWitness> recognize_aamp(const LengthSet& l, const std::vector<Count>& deltas, Count bound);
// Re-checks every clause and that the witness reproduces l.
bool replay_aamp(const AampWitness& w, const LengthSet& l);

// Needs 1 in the ground and negative part {-d, -1}; throws InvalidInput otherwise.
bool structure_condition(const GroundSpec& spec);

bool lemt_check(const LengthSet& l, Count e, Count n);

struct Claim {
  std::string formula;
  std::string expected;
  std::string observed;
  bool holds = false;
};

struct FamilyInstance {
  std::string name;
  std::vector<std::pair<std::string, Int>> parameters;
  Sequence element;
  std::vector<std::pair<std::string, Sequence>> atoms;
  std::vector<std::pair<std::string, Factorization>> factorizations;
  std::vector<Claim> claims;
  bool unguaranteed = false;
  std::string validation = "structural";  // or "enumerated"

  Int parameter(const std::string& key) const;
  const Factorization& factorization(const std::string& key) const;
};

// Throws DataError if any embedded atom, factorization or claim fails.
void validate_family(const FamilyInstance& f);

FamilyInstance family_lem1(Int d, Int e, Int k);
FamilyInstance family_lem2(Int d, Int e, Int f, Int l, Int k);
FamilyInstance family_prop2(Int d, Int k, const Budget& budget = Budget());
FamilyInstance family_example6(Int d, Int e, Int k, Int l, const Budget& budget = Budget());
FamilyInstance family_prop46(Int a1, Int a2, Int b, Int n);
FamilyInstance family_prop71(Int d1, Int d2, Int n, Int m);

// Closed-form set of lengths claimed for the example6 element.
LengthSet example6_lengths(Int d, Int e, Int k, Int l);

bool is_half_factorial_three(Int a1, Int a2, Int b);

}  // namespace zsm
