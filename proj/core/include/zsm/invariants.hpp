#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsm/factorize.hpp"

namespace zsm {

enum class Monotonicity { nondecreasing, nonincreasing, none };
std::string to_string(Monotonicity m);

struct Chain {
  std::vector<Factorization> steps;
  Count max_step = 0;
  Monotonicity monotone = Monotonicity::nondecreasing;
  Count declared_bound = -1;  // bound the builder promises, -1 if none
  std::string note;

  static Chain from_steps(std::vector<Factorization> steps);
  const Factorization& front() const { return steps.front(); }
  const Factorization& back() const { return steps.back(); }
};

// Throws DataError when products differ, distances disagree with max_step, or the flag lies.
void validate_chain(const Chain& c);

// Z(b) over the catalogue; throws BudgetExceeded when the enumeration is cut short.
FactorizationSet complete_factorizations(const Sequence& b, const BlockMonoid& m, const Budget& budget);

Count catenary(const FactorizationSet& z);
Count catenary(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());
Count monotone_catenary(const FactorizationSet& z);
Count monotone_catenary(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());
// Chain realizing the monotone bottleneck value between two factorizations of the same element.
Chain optimal_monotone_chain(const FactorizationSet& z, const Factorization& from, const Factorization& to);

Count successive_distance(const Factorization& z, const FactorizationSet& all);
Count successive_distance(const Factorization& z, const AtomSet& atoms, const Budget& budget = Budget());
Count delta_of(const FactorizationSet& all);
Count delta_of(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());
Count adjacent_length_distance(const FactorizationSet& all, Count k, Count l);
Count adjacent_length_distance(const Sequence& b, const AtomSet& atoms, Count k, Count l,
                               const Budget& budget = Budget());
Count tame_degree(const FactorizationSet& all, const Sequence& u);
Count tame_degree(const Sequence& b, const Sequence& u, const AtomSet& atoms, const Budget& budget = Budget());
Count omega_instance(const Sequence& u, const std::vector<Sequence>& parts);

// (|min G0| + |G0^-|^2) * |min G0|
Count refactoring_bound(const std::vector<Int>& ground);

Chain build_catenary_chain(const Sequence& b, const Factorization& z, const Factorization& zbar, const AtomSet& atoms,
                           const Budget& budget = Budget());
Chain build_monotone_chain_delta(const Sequence& b, const Factorization& z, const Factorization& zbar,
                                 const AtomSet& atoms, const Budget& budget = Budget());

struct GapWindow {
  Count t = 0;
  Count lo = 0;
  Count hi = 0;
  Factorization covering;  // atoms of z that contain a2
};

GapWindow lem_gap_t(const Factorization& z, Int a, Int b, Int a2, Int b1, Count v);

// Ground set with infinitely many elements of both signs: positives from one spec,
// negatives as the negated members of another.
struct TwoSidedSpec {
  GroundSpec positive;
  GroundSpec negative_magnitudes;

  static TwoSidedSpec nonzero_integers();
};

struct TameGrowthWitness {
  Int a = 0, b = 0, a2 = 0, b1 = 0;
  Count gap_constant = 0;
  Sequence u;
  Sequence element;
  Factorization split;        // V_{a,b1} V_{a2,b}
  std::optional<Factorization> through_u;
  std::optional<LengthSet> lengths;
  std::optional<Count> tame;  // t(B, U) when enumerated
  bool enumerated = false;
  bool holds = false;
  std::string certificate;    // "enumerated" or "structural"
};

TameGrowthWitness tame_growth_witness(const TwoSidedSpec& spec, Count n, const Budget& budget = Budget());

}  // namespace zsm
