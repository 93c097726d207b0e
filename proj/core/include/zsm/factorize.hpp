#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zsm/atoms.hpp"
#include "zsm/budget.hpp"
#include "zsm/groundset.hpp"
#include "zsm/rational.hpp"

namespace zsm {

struct LengthSet {
  std::vector<Count> lengths;  // sorted, distinct
  bool complete = true;        // false: only a subset of the true set is known

  LengthSet() = default;
  LengthSet(std::vector<Count> values, bool is_complete = true);
  bool empty() const { return lengths.empty(); }
  Count min() const;
  Count max() const;
  bool contains(Count k) const;
  std::string to_string() const;
  friend bool operator==(const LengthSet&, const LengthSet&) = default;
};

std::vector<Count> delta_set(const LengthSet& l);
Rational elasticity_of(const LengthSet& l);

struct FactorizationSet {
  Sequence element;
  std::vector<Factorization> all;  // canonical order
  bool complete = true;

  LengthSet lengths() const;
  std::size_t size() const { return all.size(); }
};

// Dense view of a finite block monoid: elements as exponent vectors over the ground,
// factorizations as multiplicity vectors over the atom catalogue.
class BlockMonoid {
 public:
  using Vec = std::vector<Count>;

  explicit BlockMonoid(AtomSet atoms);

  const AtomSet& catalogue() const { return atoms_; }
  const Ambient& ambient() const { return atoms_.ambient; }
  std::size_t rank() const { return atoms_.ground.size(); }
  std::size_t atom_count() const { return atoms_.atoms.size(); }
  const Sequence& atom(std::size_t i) const { return atoms_.atoms[i]; }
  std::optional<std::size_t> atom_index(const Sequence& u) const;

  bool covers(const Sequence& b) const;
  Vec encode(const Sequence& b) const;
  Sequence decode(const Vec& v) const;

  // Calls visit with atom multiplicities for each factorization, in canonical generation order.
  // Returns false when the budget or the visitor stopped the search early.
  bool enumerate(const Vec& element, Meter& meter, const std::function<bool(const Vec&)>& visit) const;
  Factorization factorization_of(const Vec& atom_counts) const;
  Vec atom_counts(const Factorization& z) const;

  FactorizationSet factorizations(const Sequence& b, const Budget& budget = Budget()) const;
  // first factorization in generation order
  Factorization any_factorization(const Sequence& b) const;

  struct SparseAtom {
    std::vector<std::pair<std::size_t, Count>> entries;  // (ground index, multiplicity)
    Count length = 0;
  };
  const SparseAtom& sparse_atom(std::size_t i) const { return sparse_[i]; }
  // atoms whose smallest term is ground[p]
  const std::vector<std::size_t>& atoms_with_pivot(std::size_t p) const { return by_pivot_[p]; }
  static bool divides(const SparseAtom& a, const Vec& v);

 private:
  void check_element(const Sequence& b) const;

  AtomSet atoms_;
  std::vector<SparseAtom> sparse_;
  std::vector<std::vector<std::size_t>> by_pivot_;
};

// Memoized sets of lengths over one block monoid.
class LengthOracle {
 public:
  explicit LengthOracle(const BlockMonoid& monoid) : monoid_(monoid) {}
  const std::vector<Count>& lengths(const BlockMonoid::Vec& element, Meter& meter);
  LengthSet length_set(const Sequence& b, const Budget& budget = Budget());
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct VecHash {
    std::size_t operator()(const BlockMonoid::Vec& v) const noexcept;
  };
  const BlockMonoid& monoid_;
  std::unordered_map<BlockMonoid::Vec, std::vector<Count>, VecHash> memo_;
};

// Atoms over supp(b), enough to factor b.
AtomSet atoms_for_element(const Sequence& b, const Budget& budget = Budget());

FactorizationSet factorizations(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());
LengthSet length_set(const Sequence& b, const AtomSet& atoms, const Budget& budget = Budget());
FactorizationSet z_k(const Sequence& b, const AtomSet& atoms, Count k, const Budget& budget = Budget());

// Smallest y with y + pattern contained in l.
std::optional<Count> pattern_contains(const LengthSet& l, const std::vector<Count>& pattern);

// Every nonempty zero-sum sequence over the ground with at most max_length terms,
// reported as exponent vectors aligned with the sorted ground.
void for_each_zero_sum(const std::vector<Int>& ground, Count max_length,
                       const std::function<void(const std::vector<Count>&)>& visit);

}  // namespace zsm
